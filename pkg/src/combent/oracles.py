"""Independent numerical routes used to cross-check the closed forms.

None of these functions is on a production path.  Each one reaches its
answer by a different method than the code it checks: adaptive or Gauss
quadrature instead of closed-form coefficients, brute-force or integral
evaluation of the double series, and direct contour or segment integrals
for the logarithmic coefficient.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy import integrate

from .asymptotics import beta_exponent
from .symbol import ChainParams, comb_branches, comb_symbol

__all__ = [
    "fourier_coeff_quadrature",
    "comb_fourier_coeff_quadrature",
    "series_I_bruteforce",
    "series_I_integral",
    "e2_segment_integral",
    "e2_unit_circle",
]

_LN2 = math.log(2.0)
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(200)


def fourier_coeff_quadrature(n: int, params: ChainParams) -> complex:
    """(1/2 pi) int_{-pi}^{pi} g(theta) exp(-i n theta) d theta by QAWO quadrature.

    Integrates each constant piece of g separately with the oscillatory
    weight cos(n theta) / sin(n theta).
    """
    k = params.k
    pieces = [(-math.pi, -k, -1.0), (-k, k, 1.0), (k, math.pi, -1.0)]
    re = im = 0.0
    for lo, hi, val in pieces:
        if hi <= lo:
            continue
        if n == 0:
            re += val * (hi - lo)
            continue
        with warnings.catch_warnings():
            # sine parts over symmetric pieces cancel to ~1e-17, below the reachable tolerance
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            c = integrate.quad(lambda t: 1.0, lo, hi, weight="cos", wvar=n, epsabs=1e-14, epsrel=1e-12)[0]
            s = integrate.quad(lambda t: 1.0, lo, hi, weight="sin", wvar=n, epsabs=1e-14, epsrel=1e-12)[0]
        re += val * c
        im -= val * s
    return complex(re, im) / (2.0 * math.pi)


def _comb_breakpoints(p: int, k: float) -> np.ndarray:
    # g(theta/p + 2 pi j/p) switches where the argument crosses +-k mod 2 pi,
    # i.e. at theta = +-p k mod 2 pi
    pts = [-math.pi, math.pi]
    for sgn in (1.0, -1.0):
        x = math.fmod(sgn * p * k + math.pi, 2.0 * math.pi)
        if x < 0:
            x += 2.0 * math.pi
        pts.append(x - math.pi)
    return np.unique(np.clip(pts, -math.pi, math.pi))


def comb_fourier_coeff_quadrature(n: int, p: int, params: ChainParams) -> complex:
    """(1/2 pi) int g_p(theta) exp(-i n theta) d theta with g_p evaluated by averaging.

    200-point Gauss-Legendre on each interval between breakpoints of g_p.
    """
    bps = _comb_breakpoints(p, params.k)
    total = 0j
    for lo, hi in zip(bps[:-1], bps[1:]):
        if hi - lo <= 1e-15:
            continue
        half = 0.5 * (hi - lo)
        theta = 0.5 * (hi + lo) + half * _GL_NODES
        vals = comb_symbol(theta, p, params)
        total += half * np.dot(_GL_WEIGHTS, vals * np.exp(-1j * n * theta))
    return complex(total) / (2.0 * math.pi)


def series_I_bruteforce(a: float, b: float, n_max: int = 4000) -> float:
    """Plain truncated double sum over 1 <= n <= n_max, 0 <= m <= n_max."""
    n = np.arange(1, n_max + 1, dtype=float)
    H = np.cumsum(1.0 / n)
    an = a**n
    bn = b**n
    total = 0.0
    for m in range(n_max + 1):
        w = H / ((n + m) * (n + m + 1.0))
        total += float(np.dot(w, an * b**m - a**m * bn))
    return total


def series_I_integral(a: float, b: float) -> float:
    """I(a, b) = int_0^1 (1-t) ln((1-bt)/(1-at)) / (t (1-at)(1-bt)) dt.

    Obtained by writing 1/((N)(N+1)) = int_0^1 t^(N-1)(1-t) dt and summing the
    generating functions of H_n and of the geometric series under the integral.
    """

    def f(t):
        if t == 0.0:
            return b - a
        return (1.0 - t) * (math.log1p(-b * t) - math.log1p(-a * t)) / (
            t * (1.0 - a * t) * (1.0 - b * t)
        )

    return integrate.quad(f, 0.0, 1.0, epsabs=1e-14, epsrel=1e-13, limit=500)[0]


def e2_segment_integral(a: float, b: float) -> float:
    """Log coefficient from the jump of beta^2 across the cut [min(a,b), max(a,b)].

    E2 = -(1/(2 pi^2 ln 2)) int_lo^hi ln((1+x)/(1-x)) ln((hi-x)/(x-lo)) dx, signed
    so that it is antisymmetric-times-antisymmetric, i.e. symmetric in (a, b).
    """
    if a == b:
        return 0.0
    lo, hi = min(a, b), max(a, b)

    def f(x):
        return (math.log1p(x) - math.log1p(-x)) * math.log((hi - x) / (x - lo))

    val = integrate.quad(f, lo, hi, epsabs=1e-14, epsrel=1e-12, limit=500)[0]
    return -val / (2.0 * math.pi**2 * _LN2)


def e2_unit_circle(p: int, params: ChainParams, n_points: int = 400_000) -> float:
    """Log coefficient from -(2/(pi i)) closed-loop integral of e(1,lam) beta dbeta/dlam.

    Counterclockwise unit circle, trapezoid rule at midpoints (so lam = +-1,
    the branch points of e(1, .), are never sampled).
    """
    br = comb_branches(p, params)
    a, b = br.g_at_0, br.g_at_pi
    if a == b:
        return 0.0
    th = (np.arange(n_points) + 0.5) * (2.0 * math.pi / n_points)
    lam = np.exp(1j * th)
    u, v = (1.0 + lam) / 2.0, (1.0 - lam) / 2.0
    e = -(u * np.log(u) + v * np.log(v)) / _LN2
    beta = beta_exponent(lam, p, params)
    dbeta = -(1.0 / (lam - b) - 1.0 / (lam - a)) / (2j * math.pi)
    integral = np.sum(e * beta * dbeta * 1j * lam) * (2.0 * math.pi / n_points)
    return float((-2.0 * integral / (math.pi * 1j)).real)
