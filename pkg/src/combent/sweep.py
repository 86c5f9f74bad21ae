"""Parameter sweeps and scaling fits.

Sweeps return lists of :class:`SweepRow` ordered by grid index (p-major,
then k), so repeated runs produce identical output.  ``fit_scaling``
compares exact finite-L entropies against the asymptotic law.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import Callable, Iterable, Sequence

import numpy as np

from .asymptotics import DEFAULT_SERIES_TOL, e1_coefficient, e2_with_diagnostics, single_spin_entropy
from .estimator import LogLinearScalingRegressor
from .exceptions import SeriesDivergenceError, ValidationError
from .spectral import exact_entropy
from .symbol import ChainParams, CombSpec
from .validation import check_L_values, check_positive_int

__all__ = [
    "ScalingFit",
    "SweepRow",
    "DEFAULT_L_SCHEDULE",
    "default_k_grid",
    "fit_scaling",
    "sweep_e1_vs_k",
    "sweep_e1_vs_p",
    "sweep_e2",
    "large_p_convergence",
]

DEFAULT_L_SCHEDULE = (10, 14, 20, 28, 40, 57, 80, 113, 160, 226, 320)
DEFAULT_GRID_POINTS = 257


@dataclass(frozen=True)
class ScalingFit:
    coeff_linear: float
    coeff_log: float
    coeff_const: float
    residual_rms: float
    L_values: tuple[int, ...]
    spec_p: int
    params: ChainParams

    @property
    def L_range(self) -> tuple[int, int]:
        return self.L_values[0], self.L_values[-1]


@dataclass(frozen=True)
class SweepRow:
    k: float
    h: float
    p: float
    e1: float
    L: int | None = None
    e2: float | None = None
    exact_entropy: float | None = None
    is_integer_p: bool | None = None
    terms: int | None = None
    tail_bound: float | None = None

    def as_dict(self, columns: Sequence[str] | None = None) -> dict:
        names = columns or [f.name for f in fields(self) if getattr(self, f.name) is not None]
        return {c: getattr(self, c) for c in names}


def _pmap(fn: Callable, items: Iterable, n_jobs: int = 1) -> list:
    # executor.map preserves input order, so output stays deterministic
    items = list(items)
    if n_jobs is None or n_jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(fn, items))


def default_k_grid(n_points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """``n_points`` equally spaced interior angles k_i = pi i / (n + 1)."""
    n = check_positive_int("grid points", n_points)
    return math.pi * np.arange(1, n + 1) / (n + 1)


def _check_k_grid(k_grid) -> np.ndarray:
    k = np.asarray(k_grid, dtype=float).ravel()
    if k.size == 0:
        raise ValidationError("k grid is empty")
    if np.any(k <= 0.0) or np.any(k >= math.pi):
        raise ValidationError("k grid must lie strictly inside (0, pi)")
    return k


def fit_scaling(
    p: int,
    params: ChainParams,
    L_values: Iterable[int] = DEFAULT_L_SCHEDULE,
    n_jobs: int = 1,
) -> ScalingFit:
    """Least-squares fit of exact entropies to a L + b ln L + c."""
    p = check_positive_int("p", p)
    Ls = check_L_values(L_values)
    S = _pmap(lambda L: exact_entropy(CombSpec(int(L), p), params).entropy_bits, Ls, n_jobs)
    reg = LogLinearScalingRegressor().fit(Ls, np.asarray(S))
    return ScalingFit(
        coeff_linear=float(reg.coef_[0]),
        coeff_log=float(reg.coef_[1]),
        coeff_const=reg.intercept_,
        residual_rms=reg.residual_rms_,
        L_values=tuple(int(L) for L in Ls),
        spec_p=p,
        params=params,
    )


def sweep_e1_vs_k(
    p_list: Sequence[int], k_grid=None, n_jobs: int = 1
) -> list[SweepRow]:
    """E1 on a k grid for each spacing in ``p_list`` (data behind E1-vs-k plots)."""
    ps = [check_positive_int("p", p) for p in p_list]
    ks = _check_k_grid(default_k_grid() if k_grid is None else k_grid)
    tasks = [(p, k) for p in ps for k in ks]

    def row(task):
        p, k = task
        return SweepRow(k=float(k), h=math.cos(k), p=p, e1=e1_coefficient(p, ChainParams(k)))

    return _pmap(row, tasks, n_jobs)


def _real_p_grid(p_max: float, resolution: float) -> list[tuple[float, bool]]:
    steps = math.ceil(1.0 / resolution - 1e-12)
    out = []
    whole = 1
    while whole <= p_max:
        for i in range(steps):
            p = whole + i / steps
            if p > p_max + 1e-12:
                break
            out.append((p, i == 0))
        whole += 1
    return out


def sweep_e1_vs_p(
    ell: int, p_max: float, real_p_resolution: float = 0.01, n_jobs: int = 1
) -> list[SweepRow]:
    """E1 over real p in [1, p_max] at k = pi / ell.

    The grid contains every integer exactly (flagged ``is_integer_p``); local
    maxima sit at p = n ell with the single-spin value.
    """
    ell = check_positive_int("ell", ell, minimum=2)
    if not (0.0 < real_p_resolution <= 0.05):
        raise ValidationError("real_p_resolution must lie in (0, 0.05]")
    if p_max < 1:
        raise ValidationError("p_max must be >= 1")
    params = ChainParams(math.pi / ell)

    def row(item):
        p, is_int = item
        return SweepRow(
            k=params.k, h=params.h, p=float(p), e1=e1_coefficient(p, params), is_integer_p=is_int
        )

    return _pmap(row, _real_p_grid(float(p_max), real_p_resolution), n_jobs)


def sweep_e2(
    p_list: Sequence[int], k_grid=None, tol: float = DEFAULT_SERIES_TOL, n_jobs: int = 1
) -> list[SweepRow]:
    """E2 with series diagnostics on a (p, k) grid; every p must be >= 2."""
    ps = [check_positive_int("p", p) for p in p_list]
    if any(p == 1 for p in ps):
        raise SeriesDivergenceError("E2 is unavailable at p = 1 (block case)")
    ks = _check_k_grid(default_k_grid() if k_grid is None else k_grid)
    tasks = [(p, k) for p in ps for k in ks]

    def row(task):
        p, k = task
        params = ChainParams(k)
        e2, terms, tail = e2_with_diagnostics(p, params, tol)
        return SweepRow(
            k=float(k), h=params.h, p=p, e1=e1_coefficient(p, params),
            e2=e2, terms=terms, tail_bound=tail,
        )

    return _pmap(row, tasks, n_jobs)


def large_p_convergence(params: ChainParams, p_values: Iterable[int]) -> dict:
    """Approach of E1(p) to the single-spin entropy as p grows.

    Returns the scaled residuals p (E1(p) - E1_single), their supremum, the
    sup-norm distance and a least-squares estimate of the constant ``a`` in
    E1(p) ~ E1_single + a / p.
    """
    ps = np.asarray([check_positive_int("p", p) for p in p_values], dtype=float)
    ref = single_spin_entropy(params)
    resid = np.array([e1_coefficient(int(p), params) for p in ps]) - ref
    scaled = ps * resid
    inv = 1.0 / ps
    a = float(np.dot(inv, resid) / np.dot(inv, inv))
    return {
        "p": ps,
        "residual": resid,
        "scaled_residual": scaled,
        "sup_scaled": float(np.max(np.abs(scaled))),
        "sup_distance": float(np.max(np.abs(resid))),
        "a_fit": a,
    }
