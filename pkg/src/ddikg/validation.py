"""Input validation helpers used across estimators and core functions."""

from __future__ import annotations

import numpy as np
from sklearn.exceptions import NotFittedError

from .errors import DdiKgError


def as_rng(seed) -> np.random.Generator:
    """Return a Generator; integers seed a fresh PCG64 stream."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def check_positive(name: str, value, *, strict: bool = True) -> None:
    if strict and not value > 0:
        raise DdiKgError(f"{name} must be positive, got {value!r}")
    if not strict and value < 0:
        raise DdiKgError(f"{name} must be non-negative, got {value!r}")


def check_finite(name: str, array: np.ndarray) -> np.ndarray:
    array = np.asarray(array, dtype=np.float64)
    if not np.all(np.isfinite(array)):
        raise DdiKgError(f"{name} contains non-finite entries")
    return array


def check_choice(name: str, value: str, choices: tuple[str, ...]) -> str:
    if value not in choices:
        raise DdiKgError(f"{name} must be one of {choices}, got {value!r}")
    return value


def check_fractions(fractions) -> tuple[float, float, float]:
    """Validate a (train, valid, test) fraction triple."""
    if len(fractions) != 3:
        raise DdiKgError(f"expected 3 fractions, got {len(fractions)}")
    fracs = tuple(float(f) for f in fractions)
    if any(f < 0 for f in fracs):
        raise DdiKgError(f"fractions must be non-negative, got {fracs}")
    if abs(sum(fracs) - 1.0) > 1e-9:
        raise DdiKgError(f"fractions must sum to 1, got sum {sum(fracs)!r}")
    return fracs


def check_span(span, n_rows: int) -> tuple[int, int]:
    """Validate an inclusive token span; row 0 is reserved for the sequence start."""
    a, b = int(span[0]), int(span[1])
    if not (0 < a <= b < n_rows):
        raise DdiKgError(
            f"span ({a}, {b}) out of range for {n_rows} rows "
            "(must satisfy 0 < start <= end < n_rows)"
        )
    return a, b


def ensure_fitted(estimator, attribute: str) -> None:
    if not hasattr(estimator, attribute):
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted yet; call fit() first"
        )
