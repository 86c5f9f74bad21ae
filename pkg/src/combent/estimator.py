"""scikit-learn compatible regressor for the entropy scaling law.

``LogLinearScalingRegressor`` fits E(L) = a L + b ln L + c by ordinary least
squares.  It follows the estimator protocol (``get_params``/``set_params``,
``fit`` returning ``self``, trailing-underscore fitted attributes), so it can
be cloned, scored and dropped into pipelines or cross-validation.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .exceptions import IllConditionedFitError, ValidationError

__all__ = ["LogLinearScalingRegressor", "scaling_design_matrix"]


def scaling_design_matrix(L) -> np.ndarray:
    """Columns [L, ln L, 1] for positive subsystem sizes ``L``."""
    L = np.asarray(L, dtype=float).ravel()
    if np.any(L <= 0):
        raise ValidationError("subsystem sizes must be positive")
    return np.column_stack([L, np.log(L), np.ones_like(L)])


class LogLinearScalingRegressor(RegressorMixin, BaseEstimator):
    """Least-squares fit of y = coef_[0] * L + coef_[1] * ln L + intercept_.

    Parameters
    ----------
    min_points : int, default=8
        Minimum number of distinct L values accepted by ``fit``.
    min_L : int, default=10
        Smallest admissible subsystem size; below it the O(1) and o(1)
        corrections dominate.
    max_condition : float, default=1e12
        Largest tolerated 2-norm condition number of the design matrix.

    Attributes
    ----------
    coef_ : ndarray of shape (2,)
        Coefficients of L and ln L.
    intercept_ : float
    residual_rms_ : float
        Root-mean-square residual on the training data.
    condition_number_ : float
    n_features_in_ : int
        Always 1 (the column of L values).
    """

    def __init__(self, min_points: int = 8, min_L: int = 10, max_condition: float = 1e12):
        self.min_points = min_points
        self.min_L = min_L
        self.max_condition = max_condition

    def _validate_L(self, X, reset: bool):
        if reset:
            self.n_features_in_ = 1
        X = check_array(X, ensure_2d=False, dtype=float)
        X = X.reshape(-1, 1) if X.ndim == 1 else X
        if X.shape[1] != 1:
            raise ValidationError(f"expected a single column of L values, got {X.shape[1]}")
        return X[:, 0]

    def fit(self, X, y):
        """Fit on subsystem sizes ``X`` (shape (n,) or (n, 1)) and entropies ``y``."""
        L = self._validate_L(X, reset=True)
        L, y = check_X_y(L.reshape(-1, 1), y, dtype=float, y_numeric=True)
        L = L[:, 0]
        if np.unique(L).size < self.min_points:
            raise ValidationError(
                f"need at least {self.min_points} distinct L values, got {np.unique(L).size}"
            )
        if L.min() < self.min_L:
            raise ValidationError(f"smallest L must be >= {self.min_L}, got {L.min():g}")
        A = scaling_design_matrix(L)
        cond = float(np.linalg.cond(A))
        if not np.isfinite(cond) or cond > self.max_condition:
            raise IllConditionedFitError(f"design matrix condition number {cond:.3e} too large")
        sol, *_ = np.linalg.lstsq(A, y, rcond=None)
        resid = y - A @ sol
        self.coef_ = sol[:2].copy()
        self.intercept_ = float(sol[2])
        self.residual_rms_ = float(np.sqrt(np.mean(resid**2)))
        self.condition_number_ = cond
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        L = self._validate_L(X, reset=False)
        return scaling_design_matrix(L) @ np.append(self.coef_, self.intercept_)
