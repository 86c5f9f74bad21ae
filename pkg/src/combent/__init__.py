"""Entanglement entropy of comb-shaped subsystems in the critical XX chain.

Exact finite-size entropies come from the spectrum of the comb Toeplitz
matrix; the large-L coefficients E1 (linear) and E2 (logarithmic) come from
the comb-averaged symbol.  Independent oracles for both live in
:mod:`combent.oracles` and are exercised by :mod:`combent.verify`.
"""

__version__ = "0.1.0"

from .asymptotics import (
    AsymptoticCoeffs,
    asymptotic_coeffs,
    beta_exponent,
    cusp_value,
    e1_coefficient,
    e2_coefficient,
    e2_with_diagnostics,
    series_I,
    single_spin_entropy,
)
from .estimator import LogLinearScalingRegressor
from .exceptions import (
    BranchCutError,
    CombentError,
    DomainError,
    IllConditionedFitError,
    NumericalError,
    ResourceLimitError,
    SeriesDivergenceError,
    SingularContourError,
    SpectrumError,
    ValidationError,
)
from .spectral import (
    build_comb_toeplitz,
    contour_entropy_oracle,
    entropy_kernel_e,
    exact_entropy,
    ising_comb_entropy,
)
from .sweep import (
    ScalingFit,
    SweepRow,
    fit_scaling,
    large_p_convergence,
    sweep_e1_vs_k,
    sweep_e1_vs_p,
    sweep_e2,
)
from .symbol import ChainParams, CombSpec, comb_branches, comb_symbol, fourier_coeff, symbol_g

__all__ = [name for name in dir() if not name.startswith("_")]
