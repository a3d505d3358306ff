"""Floating-point foundation shared by every evaluator.

Everything here works in IEEE double precision.  Constants are stored as
pre-rounded literals; the test-suite recomputes them with an independent
high-precision oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

EPS = 2.0**-52


class InvalidInputError(ValueError):
    """Raised for non-finite or otherwise malformed numeric input."""


class DomainError(ValueError):
    """Raised when an argument lies outside an evaluator's real domain."""


class ResourceLimitError(RuntimeError):
    """Raised when a tolerance cannot be met within the configured limits.

    The best estimate reached so far is kept on the exception so callers
    can still report it.
    """

    def __init__(self, message: str, value: float = math.nan, err_est: float = math.inf):
        super().__init__(message)
        self.value = value
        self.err_est = err_est


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative accuracy request.

    An evaluator meets the request when its error is at most
    ``max(abs, rel * |value|)``.
    """

    abs: float = 0.0
    rel: float = 0.0

    def __post_init__(self):
        for name in ("abs", "rel"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v) or v < 0:
                raise InvalidInputError(f"tolerance {name} must be finite and >= 0, got {v!r}")
        if self.abs + self.rel <= 0:
            raise InvalidInputError("tolerance needs abs + rel > 0")

    @classmethod
    def coerce(cls, tol: "Tolerance | float | None", default: "Tolerance") -> "Tolerance":
        """Accept a Tolerance, a bare float (used for both parts) or None."""
        if tol is None:
            return default
        if isinstance(tol, Tolerance):
            return tol
        return cls(float(tol), float(tol))

    def bound(self, value: float) -> float:
        return max(self.abs, self.rel * abs(value))

    @property
    def threshold(self) -> float:
        """Cut-off for scaled residuals, which are already relative above 1."""
        return max(self.abs, self.rel)

    def scaled(self, factor: float, floor: float = 0.0) -> "Tolerance":
        return Tolerance(max(self.abs * factor, floor), max(self.rel * factor, floor))


def _check_finite(x: float, what: str = "input") -> float:
    if not math.isfinite(x):
        raise InvalidInputError(f"non-finite {what}: {x!r}")
    return x


def compensated_sum(terms: Iterable[float]) -> float:
    """Sum ``terms`` with error within one rounding of the exact sum.

    >>> compensated_sum([1.0, -1.0, 1e-16])
    1e-16
    """
    values = list(terms)
    for t in values:
        _check_finite(t, "term")
    return math.fsum(values)


def rel_residual(lhs: float, rhs: float) -> float:
    """|lhs - rhs| scaled by max(1, |lhs|, |rhs|)."""
    _check_finite(lhs, "lhs")
    _check_finite(rhs, "rhs")
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


# correctly rounded doubles
PI = 3.141592653589793
SQRT2 = 1.4142135623730951
LOG_1P_SQRT2 = 0.881373587019543  # ln(1 + sqrt 2)
KG = 1.782213978191369  # pi / (2 ln(1 + sqrt 2))
PI2_6 = 1.6449340668482264  # zeta(2)
PI2_8 = 1.2337005501361697  # lambda(2), the odd-index zeta sum

_CONSTANTS = {"pi": PI, "sqrt2": SQRT2, "L": LOG_1P_SQRT2, "kg": KG}


def constant(name: str) -> float:
    """Return one of the named constants ``pi``, ``sqrt2``, ``L``, ``kg``."""
    try:
        return _CONSTANTS[name]
    except KeyError:
        raise LookupError(f"unknown constant {name!r}; expected one of {sorted(_CONSTANTS)}") from None

