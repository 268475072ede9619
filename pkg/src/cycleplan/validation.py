"""Input validation helpers for array-shaped demand forecasts."""
import numpy as np

from .demand import Horizon
from .errors import DomainError


def check_forecast(X):
    """Validate ``X`` of shape ``(n_periods, 2)`` holding (mean, std) rows.

    A ``Horizon`` passes through unchanged. Returns a ``Horizon``.
    """
    if isinstance(X, Horizon):
        return X
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DomainError(f"forecast must have shape (n_periods, 2), got {arr.shape}")
    if arr.shape[0] < 1:
        raise DomainError("forecast must contain at least one period")
    if not np.all(np.isfinite(arr)):
        raise DomainError("forecast contains non-finite values")
    if np.any(arr < 0):
        raise DomainError("forecast means and standard deviations must be >= 0")
    return Horizon.from_arrays(arr[:, 0], arr[:, 1])


def check_beta(beta):
    beta = float(beta)
    if not (0.0 < beta < 1.0):
        raise DomainError(f"beta must lie in (0, 1), got {beta!r}")
    return beta
