"""Exception hierarchy.

Validation problems subclass ``ValueError`` so callers that only care about
bad input can catch the builtin; numerical failures subclass
``ArithmeticError``.
"""


class CombentError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(CombentError, ValueError):
    """Invalid parameters (angle out of range, non-positive L, ...)."""


class DomainError(CombentError, ValueError):
    """Argument outside the domain of a closed-form expression."""


class ResourceLimitError(CombentError):
    """Requested matrix exceeds the configured size cap."""


class NumericalError(CombentError, ArithmeticError):
    """A computed quantity violated a hard mathematical bound."""


class SpectrumError(NumericalError):
    """Eigenvalues of a correlation matrix left [-1, 1] beyond tolerance."""


class SingularContourError(NumericalError):
    """Integration contour passes too close to a pole."""


class BranchCutError(NumericalError):
    """Evaluation point lies on a logarithmic branch cut."""


class SeriesDivergenceError(NumericalError):
    """The double series I(a, b) does not converge for the given arguments."""


class IllConditionedFitError(NumericalError):
    """Least-squares design matrix is numerically rank deficient."""
