"""Exact comb entropy from the spectrum of the restricted Toeplitz matrix.

For a comb of L spins the relevant correlation matrix is

    (T_A)_{jl} = g~_{p (j - l)},    0 <= j, l < L,

and the entanglement entropy (in bits) is sum_i e(1, nu_i) over its
eigenvalues nu_i.  That is the residue evaluation of the contour integral of
e(1 + eps, lambda) d ln det(lambda - T_A)/d lambda around [-1, 1];
``contour_entropy_oracle`` evaluates the integral itself so the two can be
compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg
from scipy.special import xlogy

from .exceptions import DomainError, ResourceLimitError, SingularContourError, SpectrumError
from .symbol import ChainParams, CombSpec, fourier_coeff
from .validation import check_positive_int

__all__ = [
    "CombToeplitz",
    "SpectralEntropyResult",
    "entropy_kernel_e",
    "build_comb_toeplitz",
    "exact_entropy",
    "contour_entropy_oracle",
    "ising_comb_entropy",
    "DEFAULT_MAX_DIM",
]

DEFAULT_MAX_DIM = 5000

_LN2 = math.log(2.0)
_DOMAIN_ATOL = 1e-12
_CLAMP_ATOL = 1e-8


def entropy_kernel_e(x, y):
    """e(x, y) = -((x+y)/2) log2((x+y)/2) - ((x-y)/2) log2((x-y)/2).

    Uses 0 log 0 = 0.  ``e(1, nu)`` is the binary entropy of (1 + nu)/2.
    Vectorised; raises :class:`DomainError` when |y| > x beyond 1e-12.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(y) > x + _DOMAIN_ATOL):
        raise DomainError("entropy kernel e(x, y) requires |y| <= x")
    u = np.clip((x + y) / 2.0, 0.0, None)
    v = np.clip((x - y) / 2.0, 0.0, None)
    out = -(xlogy(u, u) + xlogy(v, v)) / _LN2
    return float(out) if out.ndim == 0 else out


def _entropy_kernel_complex(x: float, lam: np.ndarray) -> np.ndarray:
    # principal logs; cuts run along the real axis outside [-x, x]
    u = (x + lam) / 2.0
    v = (x - lam) / 2.0
    return -(u * np.log(u) + v * np.log(v)) / _LN2


@dataclass(frozen=True)
class CombToeplitz:
    """Real symmetric Toeplitz correlation matrix of a comb."""

    spec: CombSpec
    params: ChainParams
    entries: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.spec.L

    @property
    def first_column(self) -> np.ndarray:
        return self.entries[:, 0]


@dataclass(frozen=True)
class SpectralEntropyResult:
    spec: CombSpec
    params: ChainParams
    eigenvalues: np.ndarray = field(repr=False)
    entropy_bits: float


def build_comb_toeplitz(
    spec: CombSpec, params: ChainParams, max_dim: int = DEFAULT_MAX_DIM
) -> CombToeplitz:
    """Matrix with entries g~_{p (j - l)} for the comb ``spec``."""
    if spec.L > max_dim:
        raise ResourceLimitError(f"L = {spec.L} exceeds the matrix size cap {max_dim}")
    col = fourier_coeff(spec.p * np.arange(spec.L), params)
    mat = linalg.toeplitz(np.atleast_1d(col))
    mat.setflags(write=False)
    return CombToeplitz(spec=spec, params=params, entries=mat)


def exact_entropy(
    spec: CombSpec, params: ChainParams, max_dim: int = DEFAULT_MAX_DIM
) -> SpectralEntropyResult:
    """Entanglement entropy of the comb, in bits, from the spectrum of T_A."""
    T = build_comb_toeplitz(spec, params, max_dim=max_dim)
    nu = linalg.eigh(T.entries, eigvals_only=True, check_finite=False)
    excess = float(np.max(np.abs(nu))) - 1.0
    if excess > _CLAMP_ATOL:
        raise SpectrumError(
            f"eigenvalue outside [-1, 1] by {excess:.3e}; Toeplitz construction is broken"
        )
    nu = np.clip(np.sort(nu), -1.0, 1.0)
    nu.setflags(write=False)
    S = float(np.sum(entropy_kernel_e(1.0, nu)))
    return SpectralEntropyResult(spec=spec, params=params, eigenvalues=nu, entropy_bits=S)


def _log_det_derivative(diag: np.ndarray, offdiag: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """d/d lambda ln det(lambda - H) for symmetric tridiagonal H, vectorised in lambda.

    Three-term recurrence for the characteristic polynomial and its
    derivative; ratios are renormalised each step to avoid overflow.
    """
    P_prev = np.ones_like(lam)
    dP_prev = np.zeros_like(lam)
    P = lam - diag[0]
    dP = np.ones_like(lam)
    for j in range(1, diag.size):
        b2 = offdiag[j - 1] ** 2
        P_new = (lam - diag[j]) * P - b2 * P_prev
        dP_new = P + (lam - diag[j]) * dP - b2 * dP_prev
        scale = np.abs(P_new) + np.abs(P)
        scale = np.where(scale > 0, scale, 1.0)
        P_prev, dP_prev = P / scale, dP / scale
        P, dP = P_new / scale, dP_new / scale
    return dP / P


def _rectangle_nodes(half_width: float, delta: float, n_points: int, eps: float):
    """Nodes and weights (d lambda) of a counterclockwise rectangle.

    Horizontal sides at Im = -+delta use the uniform trapezoid rule.  Vertical
    sides at Re = +-half_width use the trapezoid rule in a sinh-graded
    parameter that clusters nodes near the real axis, where poles may sit as
    close as eps/2.
    """
    n_vert = max(400, n_points // 10)
    n_horiz = max(1000, (n_points - 2 * n_vert) // 2)

    def trap(n):
        t = np.linspace(-1.0, 1.0, n)
        w = np.full(n, 2.0 / (n - 1))
        w[0] = w[-1] = 1.0 / (n - 1)
        return t, w

    t, w = trap(n_horiz)
    x = half_width * t
    wx = half_width * w
    bottom = (x - 1j * delta, wx.astype(complex))
    top = (x[::-1] + 1j * delta, -wx[::-1].astype(complex))

    c = math.asinh(2.0 * delta / eps)
    t, w = trap(n_vert)
    y = delta * np.sinh(c * t) / math.sinh(c)
    wy = w * delta * c * np.cosh(c * t) / math.sinh(c)
    right = (half_width + 1j * y, 1j * wy)
    left = (-half_width - 1j * y, -1j * wy)

    nodes = np.concatenate([bottom[0], right[0], top[0], left[0]])
    weights = np.concatenate([bottom[1], right[1], top[1], left[1]])
    return nodes, weights


def contour_entropy_oracle(
    spec: CombSpec,
    params: ChainParams,
    epsilon: float = 1e-7,
    delta: float = 1e-3,
    n_points: int = 100_000,
) -> float:
    """Entropy from a direct quadrature of the contour integral.

    Integrates (1/2 pi i) e(1 + eps, lambda) d ln D_A/d lambda counterclockwise
    around a rectangle enclosing [-1, 1] at distance ``delta``, with vertical
    sides at +-(1 + eps/2) so that the branch points +-(1 + eps) stay outside.
    D_A is evaluated through the tridiagonal (Lanczos/Householder) form of
    T_A; no eigenvalues enter the integrand.  Intended for small L only.
    """
    if spec.L > 8:
        raise DomainError("contour oracle is limited to L <= 8")
    if not (1e-6 <= delta <= 1e-2):
        raise DomainError("delta must lie in [1e-6, 1e-2]")
    if not (0.0 < epsilon <= 1e-3):
        raise DomainError("epsilon must lie in (0, 1e-3]")
    if n_points < 10_000:
        raise DomainError("n_points must be at least 1e4")

    T = build_comb_toeplitz(spec, params).entries
    half_width = 1.0 + epsilon / 2.0

    # the contour must not graze the spectrum; eigenvalues are used only for this guard
    nu = linalg.eigvalsh(T)
    gap = min(delta, half_width - float(np.max(np.abs(nu))))
    limit = 1e-3 * min(delta, epsilon / 2.0)
    if gap < limit:
        raise SingularContourError(
            f"contour passes within {gap:.3e} of an eigenvalue (limit {limit:.3e})"
        )

    if spec.L == 1:
        diag, off = np.array([T[0, 0]]), np.zeros(0)
    else:
        H = linalg.hessenberg(T)
        diag, off = np.diag(H).copy(), np.diag(H, -1).copy()

    lam, dlam = _rectangle_nodes(half_width, delta, n_points, epsilon)
    integrand = _entropy_kernel_complex(1.0 + epsilon, lam) * _log_det_derivative(diag, off, lam)
    value = np.sum(integrand * dlam) / (2j * math.pi)
    return float(value.real)


def ising_comb_entropy(spec: CombSpec) -> float:
    """Comb entropy of the transverse Ising chain at zero field.

    There g(theta) = exp(i theta), every comb average vanishes, T_A = 0 and
    each tooth carries exactly one bit.
    """
    if not isinstance(spec, CombSpec):
        spec = CombSpec(*spec)
    return float(check_positive_int("L", spec.L))
