"""Real dilogarithm toolkit and identity verification harness."""

__version__ = "0.1.0"

from .numerics import (
    DomainError,
    InvalidInputError,
    ResourceLimitError,
    Tolerance,
    compensated_sum,
    constant,
    rel_residual,
)
from .special import EvalResult, chi2, chi2_via_integral, li2, li2_series, li2_via_integral
from .nested import grothendieck_sum, inner_tail, lima_difference_series
from .quadrature import (
    Integrand,
    QuadResult,
    integrate_adaptive,
    integrate_decaying_tail,
    integrate_log_endpoint,
)

__all__ = [
    "DomainError",
    "EvalResult",
    "Integrand",
    "InvalidInputError",
    "QuadResult",
    "ResourceLimitError",
    "Tolerance",
    "chi2",
    "chi2_via_integral",
    "compensated_sum",
    "constant",
    "grothendieck_sum",
    "inner_tail",
    "integrate_adaptive",
    "integrate_decaying_tail",
    "integrate_log_endpoint",
    "li2",
    "li2_series",
    "li2_via_integral",
    "lima_difference_series",
    "rel_residual",
]
