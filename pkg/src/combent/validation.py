"""Input validation helpers shared by the library, the estimator and the CLI."""

from __future__ import annotations

import math
import numbers
import re
from typing import Iterable

import numpy as np

from .exceptions import ValidationError

__all__ = [
    "check_angle",
    "check_field",
    "check_positive_int",
    "check_spacing",
    "check_L_values",
    "parse_angle",
    "is_integral",
]

_PI_FORM = re.compile(
    r"^\s*(?:(?P<num>[+-]?\d+)\s*\*\s*)?pi\s*(?:/\s*(?P<den>\d+))?\s*$", re.IGNORECASE
)


def is_integral(value, atol: float = 0.0) -> bool:
    """True if ``value`` is an integer, or a float within ``atol`` of one."""
    if isinstance(value, (numbers.Integral, np.integer)):
        return True
    try:
        f = float(value)
    except (TypeError, ValueError):
        return False
    return math.isfinite(f) and abs(f - round(f)) <= atol


def check_angle(k) -> float:
    """Return ``k`` as a float, requiring 0 <= k <= pi."""
    try:
        k = float(k)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"angle k must be a real number, got {k!r}") from exc
    if not math.isfinite(k) or k < 0.0 or k > math.pi:
        raise ValidationError(f"angle k must lie in [0, pi], got {k!r}")
    return k


def check_field(h) -> float:
    try:
        h = float(h)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"field h must be a real number, got {h!r}") from exc
    if not math.isfinite(h) or abs(h) > 1.0:
        raise ValidationError(f"field h must satisfy |h| <= 1 (critical regime), got {h!r}")
    return h


def check_positive_int(name: str, value, minimum: int = 1) -> int:
    """Coerce ``value`` to ``int`` and require ``value >= minimum``.

    Floats are accepted only when they are exactly integral; booleans are rejected.
    """
    if isinstance(value, bool) or not is_integral(value):
        raise ValidationError(f"{name} must be an integer, got {value!r}")
    value = int(round(float(value)))
    if value < minimum:
        raise ValidationError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_spacing(p, allow_real: bool = False) -> int | float:
    """Validate a comb spacing.

    Integer spacings are returned as ``int``. With ``allow_real`` a non-integral
    float >= 1 is passed through unchanged (the real-p extension of the
    leading coefficient).
    """
    if allow_real and not is_integral(p):
        try:
            pf = float(p)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"spacing p must be a real number, got {p!r}") from exc
        if not math.isfinite(pf) or pf < 1.0:
            raise ValidationError(f"spacing p must be >= 1, got {p!r}")
        return pf
    return check_positive_int("p", p)


def check_L_values(L_values: Iterable, min_count: int = 8, min_L: int = 10) -> np.ndarray:
    """Sorted array of distinct subsystem sizes suitable for a scaling fit."""
    try:
        raw = list(L_values)
    except TypeError as exc:
        raise ValidationError("L_values must be an iterable of integers") from exc
    vals = sorted({check_positive_int("L", v) for v in raw})
    if len(vals) < min_count:
        raise ValidationError(
            f"scaling fit needs at least {min_count} distinct L values, got {len(vals)}"
        )
    if vals[0] < min_L:
        raise ValidationError(f"scaling fit needs min L >= {min_L}, got {vals[0]}")
    return np.asarray(vals, dtype=int)


def parse_angle(text: str) -> float:
    """Parse an angle given as a decimal or as ``pi``, ``pi/N`` or ``M*pi/N``.

    >>> parse_angle("pi/2") == math.pi / 2
    True
    >>> parse_angle("0.25")
    0.25
    """
    m = _PI_FORM.match(text)
    if m:
        num = int(m.group("num")) if m.group("num") else 1
        den = int(m.group("den")) if m.group("den") else 1
        if den == 0:
            raise ValidationError(f"zero denominator in angle {text!r}")
        return num * math.pi / den
    try:
        return float(text)
    except ValueError as exc:
        raise ValidationError(f"cannot parse angle {text!r}; use a decimal or pi/N") from exc
