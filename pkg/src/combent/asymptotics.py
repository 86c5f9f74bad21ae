"""Closed-form large-L coefficients of the comb entropy.

    E(L; p) = E1(p) L + E2(p) ln L + O(1),    L -> infinity.

E1 follows from the mean of the entropy kernel over the comb symbol g_p,
which takes the value a = g_p(0) on an arc of half-width theta* and
b = g_p(pi) elsewhere.  E2 comes from the two jump discontinuities of g_p at
+-theta* and is written through the double series

    I(a, b) = sum_{m>=0} sum_{n>=1} H_n (a^n b^m - a^m b^n) / ((n+m)(n+m+1)),

H_n the harmonic numbers.  The expansion of e(1, lambda) contains only even
powers, so only anti-diagonals n + m odd contribute:

    E2 = (a - b) / (2 pi^2 ln 2) * [I(a, b) - I(-a, -b)].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import digamma

from .exceptions import BranchCutError, DomainError, SeriesDivergenceError, ValidationError
from .spectral import entropy_kernel_e
from .symbol import ChainParams, CombSymbolBranches, comb_branches
from .validation import check_positive_int, check_spacing

__all__ = [
    "AsymptoticCoeffs",
    "SeriesDiagnostics",
    "e1_coefficient",
    "single_spin_entropy",
    "cusp_value",
    "series_I",
    "e2_coefficient",
    "e2_with_diagnostics",
    "asymptotic_coeffs",
    "beta_exponent",
    "DEFAULT_SERIES_TOL",
]

DEFAULT_SERIES_TOL = 1e-13
MAX_ANTIDIAGONAL = 200_000
_UNIT_ATOL = 1e-14
_LN2 = math.log(2.0)


@dataclass(frozen=True)
class SeriesDiagnostics:
    """Value of I(a, b) together with its truncation certificate."""

    a: float
    b: float
    value: float
    terms: int
    tail_bound: float
    converged: bool


@dataclass(frozen=True)
class AsymptoticCoeffs:
    e1: float
    e2: float | None
    branches: CombSymbolBranches
    series_terms_used: int
    series_tail_bound: float


def _weighted(theta_star: float, g0: float, gpi: float) -> float:
    # zero-weight branches are skipped: for real p they may leave [-1, 1]
    total = 0.0
    if theta_star > 0.0:
        total += theta_star * entropy_kernel_e(1.0, g0)
    if theta_star < math.pi:
        total += (math.pi - theta_star) * entropy_kernel_e(1.0, gpi)
    return total / math.pi


def e1_coefficient(p, params: ChainParams) -> float:
    """Entropy per comb tooth in the L -> infinity limit.

    E1(p) = [theta* e(1, g_p(0)) + (pi - theta*) e(1, g_p(pi))] / pi.

    Real p >= 1 is accepted (continuous extension in p).  For k > pi/2 and
    non-integral p a branch value can fall outside [-1, 1]; that raises
    :class:`~combent.exceptions.DomainError`.
    """
    br = comb_branches(p, params)
    return _weighted(br.theta_star, br.g_at_0, br.g_at_pi)


def single_spin_entropy(params: ChainParams) -> float:
    """Entropy of one spin against the rest of the chain, e(1, 2k/pi - 1)."""
    return entropy_kernel_e(1.0, 2.0 * params.k / math.pi - 1.0)


def cusp_value(n: int, params: ChainParams) -> float:
    """E1 at the real spacing p = n pi / k, where it has a cusp maximum."""
    n = check_positive_int("n", n)
    if params.k <= 0.0:
        raise ValidationError("cusp positions p = n pi / k need k > 0")
    p = n * math.pi / params.k
    if p < 1.0:
        raise ValidationError(f"cusp spacing n pi / k = {p:.6g} is below 1")
    return e1_coefficient(p, params)


def _snap_unit(x: float) -> float:
    if abs(abs(x) - 1.0) <= _UNIT_ATOL:
        return math.copysign(1.0, x)
    return x


def _tail_envelope(r: float, N: int) -> float:
    """Upper bound of sum_{T > N} (1 + ln T) r^T / T for 0 <= r < 1, N >= 2.

    (1 + ln T)/T is decreasing for T >= 2, so the tail is dominated by a
    geometric series.
    """
    if r == 0.0:
        return 0.0
    T = N + 1
    return (1.0 + math.log(T)) / T * r**T / (1.0 - r)


def _interior_series(a: float, b: float, tol: float) -> SeriesDiagnostics:
    """Anti-diagonal summation for max(|a|, |b|) < 1.

    On anti-diagonal T = n + m, |a^n b^m - a^m b^n| <= 2 r^T and
    sum_{n<=T} H_n <= T (1 + ln T), so its contribution is at most
    2 (1 + ln T) r^T / (T + 1); the remaining tail is bounded accordingly.
    """
    r = max(abs(a), abs(b))
    cap = 64
    H = np.cumsum(1.0 / np.arange(1, cap + 1))
    pa = a ** np.arange(cap + 1)
    pb = b ** np.arange(cap + 1)
    total = 0.0
    T = 0
    bound = math.inf
    while T < MAX_ANTIDIAGONAL:
        T += 1
        if T > cap:
            cap *= 2
            H = np.cumsum(1.0 / np.arange(1, cap + 1))
            pa = a ** np.arange(cap + 1)
            pb = b ** np.arange(cap + 1)
        n = np.arange(1, T + 1)
        m = T - n
        total += float(np.dot(H[:T], pa[n] * pb[m] - pa[m] * pb[n])) / (T * (T + 1.0))
        if T >= 2:
            bound = 2.0 * _tail_envelope(r, T)
            if bound <= tol:
                break
    return SeriesDiagnostics(a, b, total, T, bound, bound <= tol)


def _row_sum_b1(b: float, n: np.ndarray) -> np.ndarray:
    """R(b, n) = sum_{m>=0} b^m / ((n+m)(n+m+1)) for b = +-1.

    b = 1 telescopes to 1/n; b = -1 gives -1/n + digamma((n+1)/2) - digamma(n/2).
    """
    n = n.astype(float)
    if b > 0:
        return 1.0 / n
    return -1.0 / n + (digamma((n + 1.0) / 2.0) - digamma(n / 2.0))


def _col_sums_b1(b: float, M: int) -> np.ndarray:
    """Q(b, m) = sum_{n>=1} H_n b^n / ((n+m)(n+m+1)) for m = 0..M and b = +-1.

    b = 1:  Q(1, 0) = pi^2/6,  Q(1, m) = H_m / m.
    b = -1: Q(-1, m) = J_{m+1} - J_m with J_m = int_0^1 t^{m-1} ln(1+t)/(1+t) dt,
            Q(-1, 0) = ln(2)^2 - pi^2/12, and J_{m+1} = K_m - J_m where
            K_m = int_0^1 t^{m-1} ln(1+t) dt = (ln 2 - beta(m+1)) / m and
            beta(j) = sum_i (-1)^i/(j+i).
    """
    Q = np.empty(M + 1)
    if b > 0:
        Q[0] = math.pi**2 / 6.0
        if M >= 1:
            m = np.arange(1, M + 1)
            Q[1:] = np.cumsum(1.0 / m) / m
        return Q
    Q[0] = _LN2**2 - math.pi**2 / 12.0
    if M >= 1:
        m = np.arange(1, M + 2, dtype=float)
        alt = 0.5 * (digamma((m + 2.0) / 2.0) - digamma((m + 1.0) / 2.0))  # beta(m+1)
        K = (_LN2 - alt) / m
        J = np.empty(M + 2)
        J[0] = _LN2**2 / 2.0  # J_1
        for i in range(1, M + 2):
            J[i] = K[i - 1] - J[i - 1]
        Q[1:] = J[1 : M + 1] - J[:M]
    return Q


def _boundary_series(a: float, b: float, tol: float) -> SeriesDiagnostics:
    """I(a, b) for |a| < 1, |b| = 1.

    Split into S(a, b) - S(b, a) with S(x, y) the one-sided double sum and
    sum the slowly convergent index in closed form: for |y| = 1 the inner sum
    over m of S(x, y) and the inner sum over n of S(y, x) are exact, leaving
    geometric outer sums in |a|.  Each outer term is bounded by
    (1 + ln j) |a|^j / j, which certifies the truncation.
    """
    r = abs(a)
    N = 2
    while _tail_envelope(r, N) * 2.0 > tol and N < MAX_ANTIDIAGONAL:
        N = int(N * 1.5) + 1
    n = np.arange(1, N + 1)
    H = np.cumsum(1.0 / n)
    apow = a ** np.arange(N + 1)
    s_ab = float(np.dot(H * apow[1:], _row_sum_b1(b, n)))
    s_ba = float(np.dot(apow, _col_sums_b1(b, N)))
    bound = 2.0 * _tail_envelope(r, N)
    return SeriesDiagnostics(a, b, s_ab - s_ba, 2 * N + 1, bound, bound <= tol)


def series_I(a: float, b: float, tol: float = DEFAULT_SERIES_TOL) -> SeriesDiagnostics:
    """Evaluate I(a, b) with a certified truncation bound.

    Requires |a|, |b| <= 1 and not both on the unit circle (that is the block
    case p = 1, where the series is not used).  I is antisymmetric,
    I(a, b) = -I(b, a), and vanishes on the diagonal.
    """
    if tol <= 0:
        raise ValidationError("tol must be positive")
    a, b = _snap_unit(float(a)), _snap_unit(float(b))
    if abs(a) > 1.0 or abs(b) > 1.0:
        raise DomainError(f"series I(a, b) needs |a|, |b| <= 1, got a={a!r}, b={b!r}")
    if abs(a) == 1.0 and abs(b) == 1.0:
        raise SeriesDivergenceError(
            f"series I(a, b) diverges for |a| = |b| = 1 (a={a}, b={b}); block case p=1"
        )
    if a == b:
        return SeriesDiagnostics(a, b, 0.0, 0, 0.0, True)
    if abs(b) == 1.0:
        diag = _boundary_series(a, b, tol)
    elif abs(a) == 1.0:
        d = _boundary_series(b, a, tol)
        diag = SeriesDiagnostics(a, b, -d.value, d.terms, d.tail_bound, d.converged)
    else:
        diag = _interior_series(a, b, tol)
    if not diag.converged:
        raise SeriesDivergenceError(
            f"series I({a}, {b}) did not reach tol={tol:g} within the term cap "
            f"(tail bound {diag.tail_bound:.3e})"
        )
    return diag


def _e2_from_values(a: float, b: float, tol: float) -> tuple[float, int, float]:
    if a == b:
        return 0.0, 0, 0.0
    plus = series_I(a, b, tol)
    minus = series_I(-a, -b, tol)
    value = (a - b) / (2.0 * math.pi**2 * _LN2) * (plus.value - minus.value)
    return value, plus.terms + minus.terms, plus.tail_bound + minus.tail_bound


def e2_coefficient(p: int, params: ChainParams, tol: float = DEFAULT_SERIES_TOL) -> float:
    """Coefficient of ln L in the comb entropy, for integer p >= 2.

    Zero when g_p has no jump (theta* = 0 or pi).  Symmetric under exchanging
    g_p(0) and g_p(pi).
    """
    return e2_with_diagnostics(p, params, tol)[0]


def e2_with_diagnostics(
    p, params: ChainParams, tol: float = DEFAULT_SERIES_TOL
) -> tuple[float, int, float]:
    """``(e2, series_terms, tail_bound)``; raises at p = 1 like :func:`e2_coefficient`."""
    p = check_spacing(p)
    if p == 1:
        raise SeriesDivergenceError("E2 series is unavailable at p = 1 (block case)")
    br = comb_branches(p, params)
    if not br.has_jump:
        return 0.0, 0, 0.0
    return _e2_from_values(br.g_at_0, br.g_at_pi, tol)


def asymptotic_coeffs(
    p, params: ChainParams, with_e2: bool = True, tol: float = DEFAULT_SERIES_TOL
) -> AsymptoticCoeffs:
    """E1 and (for integer p >= 2) E2 with series diagnostics.

    ``e2`` is ``None`` when p = 1 or p is not an integer.
    """
    br = comb_branches(p, params)
    e1 = _weighted(br.theta_star, br.g_at_0, br.g_at_pi)
    e2, terms, tail = None, 0, 0.0
    if with_e2 and float(p).is_integer() and p >= 2:
        e2, terms, tail = e2_with_diagnostics(int(p), params, tol)
    return AsymptoticCoeffs(
        e1=e1, e2=e2, branches=br, series_terms_used=terms, series_tail_bound=tail
    )


def beta_exponent(lam, p: int, params: ChainParams):
    """Fisher-Hartwig exponent beta = -(1/2 pi i) ln((lam - g_p(pi)) / (lam - g_p(0))).

    Principal branch; vectorised over ``lam``.  The cut is the real segment
    between g_p(0) and g_p(pi).
    """
    br = comb_branches(check_spacing(p), params)
    a, b = br.g_at_0, br.g_at_pi
    lam = np.asarray(lam, dtype=complex)
    if a == b:
        out = np.zeros_like(lam)
    else:
        lo, hi = min(a, b), max(a, b)
        on_cut = (np.abs(lam.imag) <= 1e-15) & (lam.real >= lo) & (lam.real <= hi)
        if np.any(on_cut):
            raise BranchCutError(f"lambda lies on the cut [{lo}, {hi}]")
        out = -np.log((lam - b) / (lam - a)) / (2j * math.pi)
    return complex(out) if out.ndim == 0 else out
