"""Oracle suite: every closed form checked against an independent route."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import oracles
from .asymptotics import cusp_value, e2_coefficient, series_I, single_spin_entropy
from .spectral import contour_entropy_oracle, exact_entropy
from .symbol import ChainParams, CombSpec, comb_branches, comb_symbol, fourier_coeff

__all__ = ["CheckResult", "run_verification", "format_report", "CHECKS"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float
    cases: int
    seconds: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.max_deviation)) and self.max_deviation <= self.tolerance


def _k_grid(n):
    return [math.pi * (i + 0.5) / n for i in range(n)]


def check_poisson(quick: bool = False):
    """Fourier coefficients of the averaged comb symbol equal g~_{p n}."""
    n_max, p_max, ks = (10, 3, _k_grid(5)) if quick else (30, 8, _k_grid(20))
    worst, cases = 0.0, 0
    for k in ks:
        params = ChainParams(k)
        for p in range(1, p_max + 1):
            for n in range(-n_max, n_max + 1):
                quad = oracles.comb_fourier_coeff_quadrature(n, p, params)
                worst = max(worst, abs(quad - fourier_coeff(p * n, params)))
                cases += 1
    return worst, 1e-10, cases


def check_fourier_quadrature(quick: bool = False):
    """Closed-form g~_n against adaptive oscillatory quadrature."""
    n_max, ks = (20, _k_grid(4)) if quick else (100, _k_grid(10))
    worst, cases = 0.0, 0
    for k in ks:
        params = ChainParams(k)
        for n in range(-n_max, n_max + 1):
            worst = max(worst, abs(oracles.fourier_coeff_quadrature(n, params) - fourier_coeff(n, params)))
            cases += 1
    return worst, 1e-12, cases


def check_branches(quick: bool = False):
    """Closed-form branch values against direct averaging at 0 and pi^-."""
    p_max = 6 if quick else 12
    ks = _k_grid(17 if quick else 61)
    worst, cases = 0.0, 0
    for k in ks:
        params = ChainParams(k)
        for p in range(1, p_max + 1):
            if abs(math.remainder(p * k, math.pi)) < 1e-6:
                continue
            br = comb_branches(p, params)
            worst = max(
                worst,
                abs(br.g_at_0 - comb_symbol(0.0, p, params)),
                abs(br.g_at_pi - comb_symbol(math.pi - 1e-9, p, params)),
            )
            cases += 1
    return worst, 1e-14, cases


def check_contour(quick: bool = False):
    """Contour-integral entropy against the eigenvalue sum."""
    L_max, p_max = (4, 3) if quick else (6, 4)
    ks = [math.pi / 5, math.pi / 3, math.pi / 2, 3 * math.pi / 4]
    n_points = 20_000 if quick else 100_000
    worst, cases = 0.0, 0
    for L in range(1, L_max + 1):
        for p in range(1, p_max + 1):
            for k in ks:
                spec, params = CombSpec(L, p), ChainParams(k)
                dev = abs(contour_entropy_oracle(spec, params, n_points=n_points)
                          - exact_entropy(spec, params).entropy_bits)
                worst = max(worst, dev)
                cases += 1
    return worst, 1e-4, cases


_INTERIOR_PAIRS = [(0.5, 0.25), (-1 / 3, 1 / 3), (0.2, -0.6), (-0.6, -0.2), (0.8, -0.5)]
_BOUNDARY_PAIRS = [(0.0, -1.0), (0.0, 1.0), (-0.5, -1.0), (0.5, 1.0), (1.0, -0.2), (-1.0, 0.6)]


def check_series(quick: bool = False):
    """Certified series against brute-force summation and the integral form."""
    n_max = 1500 if quick else 4000
    worst, cases = 0.0, 0
    for a, b in _INTERIOR_PAIRS[: 2 if quick else None]:
        worst = max(worst, abs(series_I(a, b).value - oracles.series_I_bruteforce(a, b, n_max)))
        cases += 1
    for a, b in _INTERIOR_PAIRS + _BOUNDARY_PAIRS:
        worst = max(worst, abs(series_I(a, b).value - oracles.series_I_integral(a, b)))
        cases += 1
    return worst, 1e-10, cases


def check_cusps(quick: bool = False):
    """E1 at p = n pi / k equals the single-spin entropy."""
    worst, cases = 0.0, 0
    for ell in (2, 3, 5):
        params = ChainParams(math.pi / ell)
        for n in range(1, 4 if quick else 6):
            worst = max(worst, abs(cusp_value(n, params) - single_spin_entropy(params)))
            cases += 1
    return worst, 1e-12, cases


def check_e2_routes(quick: bool = False):
    """Series E2 against the segment integral and the unit-circle contour."""
    cases_pk = [(3, math.pi / 2), (2, math.pi / 3), (4, math.pi / 5), (5, math.pi / 3)]
    if quick:
        cases_pk = cases_pk[:2]
    worst, cases = 0.0, 0
    for p, k in cases_pk:
        params = ChainParams(k)
        br = comb_branches(p, params)
        series = e2_coefficient(p, params)
        worst = max(worst, abs(series - oracles.e2_segment_integral(br.g_at_0, br.g_at_pi)))
        cases += 1
        if max(abs(br.g_at_0), abs(br.g_at_pi)) < 1.0:
            worst = max(worst, abs(series - oracles.e2_unit_circle(p, params)))
            cases += 1
    return worst, 1e-6, cases


CHECKS: dict[str, Callable] = {
    "poisson_identity": check_poisson,
    "fourier_quadrature": check_fourier_quadrature,
    "branch_consistency": check_branches,
    "contour_vs_spectrum": check_contour,
    "series_bruteforce": check_series,
    "cusp_identity": check_cusps,
    "e2_independent_routes": check_e2_routes,
}


def run_verification(quick: bool = False) -> list[CheckResult]:
    results = []
    for name, fn in CHECKS.items():
        t0 = time.perf_counter()
        worst, tol, cases = fn(quick)
        results.append(CheckResult(name, float(worst), tol, cases, time.perf_counter() - t0))
    return results


def format_report(results: list[CheckResult]) -> str:
    lines = [f"{'check':<24}{'status':<8}{'max_dev':>12}{'tol':>10}{'cases':>8}{'sec':>8}"]
    for r in results:
        lines.append(
            f"{r.name:<24}{'PASS' if r.passed else 'FAIL':<8}{r.max_deviation:>12.3e}"
            f"{r.tolerance:>10.0e}{r.cases:>8d}{r.seconds:>8.2f}"
        )
    return "\n".join(lines)
