"""The XX symbol, its Fourier coefficients and the comb-averaged symbol.

The ground-state correlation matrix of the critical XX chain is the Toeplitz
matrix generated by the step function

    g(theta) = +1  for -k <= theta < k,   -1 otherwise,

with the Fermi angle k related to the field by h = cos k.  Keeping every p-th
site gives another Toeplitz matrix whose symbol g_p is the average of g over
the p points theta/p + 2 pi n/p.  g_p is piecewise constant and even, with
jumps at +-theta*; ``comb_branches`` returns that structure in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .validation import check_angle, check_field, check_positive_int, check_spacing

__all__ = [
    "ChainParams",
    "CombSpec",
    "CombSymbolBranches",
    "symbol_g",
    "fourier_coeff",
    "comb_symbol",
    "comb_branches",
    "reduce_angle",
]

TWO_PI = 2.0 * math.pi

#: absolute tolerance (radians) used to classify points sitting on a jump
JUMP_ATOL = 1e-12


@dataclass(frozen=True)
class ChainParams:
    """Critical XX chain parametrised by the Fermi angle ``k`` in [0, pi]."""

    k: float

    def __post_init__(self):
        object.__setattr__(self, "k", check_angle(self.k))

    @classmethod
    def from_field(cls, h: float) -> "ChainParams":
        """Build from the magnetic field, k = arccos(h), |h| <= 1."""
        return cls(math.acos(check_field(h)))

    @property
    def h(self) -> float:
        return math.cos(self.k)


@dataclass(frozen=True)
class CombSpec:
    """Comb of ``L`` teeth at sites 0, p, 2p, ..., (L-1)p."""

    L: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "L", check_positive_int("L", self.L))
        object.__setattr__(self, "p", check_positive_int("p", self.p))


@dataclass(frozen=True)
class CombSymbolBranches:
    """Piecewise structure of g_p.

    ``g_at_0`` is the value on the jump-free neighbourhood of theta = 0 and
    ``g_at_pi`` the limit theta -> pi from below.  ``theta_star`` is the jump
    location in [0, pi] and ``alpha = p k mod 2 pi``.
    """

    theta_star: float
    g_at_0: float
    g_at_pi: float
    s: int
    alpha: float
    p: float

    @property
    def has_jump(self) -> bool:
        """False when g_p is constant almost everywhere (theta* = 0 or pi)."""
        return JUMP_ATOL < self.theta_star < math.pi - JUMP_ATOL and self.g_at_0 != self.g_at_pi


def reduce_angle(theta):
    """Map angles into the fundamental interval [-pi, pi)."""
    theta = np.asarray(theta, dtype=float)
    # values already in range pass through untouched, keeping jump points exact
    inside = (theta >= -math.pi) & (theta < math.pi)
    return np.where(inside, theta, np.mod(theta + math.pi, TWO_PI) - math.pi)


def _as_k(params) -> float:
    return params.k if isinstance(params, ChainParams) else check_angle(params)


def symbol_g(theta, params: ChainParams):
    """XX symbol: +1 on [-k, k), -1 elsewhere, extended 2 pi periodically.

    Accepts scalars or arrays; returns the same shape.
    """
    k = _as_k(params)
    t = reduce_angle(theta)
    out = np.where((t >= -k) & (t < k), 1.0, -1.0)
    return float(out) if out.ndim == 0 else out


def fourier_coeff(n, params: ChainParams):
    """Fourier coefficient (1/2 pi) int g(theta) exp(-i n theta) d theta.

    Closed form: 2k/pi - 1 for n = 0 and 2 sin(n k)/(pi n) otherwise.  The
    coefficients are real and even in n.  Vectorised over ``n``.
    """
    k = _as_k(params)
    n_arr = np.asarray(n)
    nf = n_arr.astype(float)
    safe = np.where(n_arr == 0, 1.0, nf)
    out = np.where(n_arr == 0, 2.0 * k / math.pi - 1.0, 2.0 * np.sin(nf * k) / (math.pi * safe))
    return float(out) if out.ndim == 0 else out


def comb_symbol(theta, p: int, params: ChainParams):
    """Comb-averaged symbol g_p(theta) = (1/p) sum_n g(theta/p + 2 pi n/p)."""
    p = check_positive_int("p", p)
    t = reduce_angle(theta)
    shifts = TWO_PI * np.arange(p) / p
    vals = symbol_g(t[..., None] / p + shifts, params)
    out = np.sum(np.atleast_1d(vals), axis=-1) / p
    return float(out) if np.ndim(out) == 0 else out


def comb_branches(p, params: ChainParams) -> CombSymbolBranches:
    """Jump location and branch values of g_p.

    With alpha = p k mod 2 pi, theta* = min(alpha, 2 pi - alpha) and
    s = sign(alpha - pi) (s = +1 at alpha = pi, where it is unobservable),

        g_p = 2/p - 1 + (4/p) floor(p k / 2 pi)   on [-theta*, theta*)
        g_p = (same) + 2 s / p                    elsewhere.

    ``p`` may be a real number >= 1; for non-integral p the formulas define the
    real-p extension and the branch values may leave [-1, 1].
    """
    p = check_spacing(p, allow_real=True)
    k = _as_k(params)
    # pk measured in half turns; snap to an integer when within JUMP_ATOL radians
    t = p * k / math.pi
    nearest = round(t)
    if abs(t - nearest) * math.pi <= JUMP_ATOL:
        t = float(nearest)
    q = math.floor(t / 2.0)
    alpha = math.pi * (t - 2.0 * q)
    theta_star = min(alpha, TWO_PI - alpha)
    s = 1 if alpha >= math.pi else -1
    base = 2.0 / p - 1.0 + 4.0 * q / p
    jump = 2.0 * s / p
    # theta = 0 sits inside [-theta*, theta*) unless the interval is empty;
    # theta -> pi^- sits inside only when theta* = pi.
    g0 = base if theta_star > 0.0 else base + jump
    gpi = base if theta_star >= math.pi else base + jump
    return CombSymbolBranches(
        theta_star=theta_star, g_at_0=g0, g_at_pi=gpi, s=s, alpha=alpha, p=p
    )
