"""Real dilogarithm Li2 and Legendre chi function chi2.

``li2`` sums the power series directly for |z| <= 1/2 and otherwise maps
the argument into that disc with the reflection, inversion and duplication
formulas.  ``li2_via_integral`` and ``chi2_via_integral`` go through the
defining integrals instead and share no code path with the series, so the
two families can be used to check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import EPS, PI2_6, PI2_8, DomainError, InvalidInputError, ResourceLimitError, Tolerance
from .quadrature import QuadResult, integrate_adaptive, integrate_log_endpoint

R_CUT = 0.5
MAX_SERIES_TERMS = 10000

SERIES = "series"
REDUCED = "reduced"
INTEGRAL = "integral"

# requests below the rounding level simply run the series to underflow
FULL_PRECISION = Tolerance(0.0, EPS / 4)
QUAD_TOL = Tolerance(1e-15, 1e-15)


@dataclass(frozen=True)
class EvalResult:
    """A computed value with a claimed absolute error bound."""

    value: float
    err_est: float
    terms_used: int
    method: str


def _finite(z: float) -> float:
    z = float(z)
    if not math.isfinite(z):
        raise InvalidInputError(f"argument must be finite, got {z!r}")
    return z


def _power_series(x: float, step: int, start: int, tol: Tolerance) -> EvalResult:
    """Sum x**k / k**2 over k = start, start + step, ... for |x| < 1."""
    mult = x**step
    ratio = abs(mult)
    p = x**start
    k = start
    terms = []
    partial = 0.0
    rounding = 0.0
    while True:
        t = p / (k * k)
        terms.append(t)
        partial += t
        rounding += (k + 2) * abs(t)
        k += step
        p *= mult
        # geometric majorant of everything not yet summed
        tail = abs(p) / (k * k * (1.0 - ratio))
        if tail <= tol.bound(partial) or tail == 0.0:
            break
        if len(terms) >= MAX_SERIES_TERMS:
            raise ResourceLimitError(
                f"series did not reach tolerance in {MAX_SERIES_TERMS} terms", math.fsum(terms), tail
            )
    return EvalResult(math.fsum(terms), tail + EPS * rounding, len(terms), SERIES)


def li2_series(z: float, tol: Tolerance | float | None = None) -> EvalResult:
    """Direct power series for Li2 on |z| <= 1/2.

    >>> round(li2_series(0.5).value, 10)
    0.5822405265
    """
    z = _finite(z)
    tol = Tolerance.coerce(tol, FULL_PRECISION)
    if abs(z) > R_CUT:
        raise DomainError(f"|z| = {abs(z)!r} exceeds the direct-series cutoff {R_CUT}; use li2()")
    if z == 0.0:
        return EvalResult(0.0, 0.0, 0, SERIES)
    return _power_series(z, 1, 1, tol)


def _li2_one_minus(w: float):
    """Li2(1 - w) for 0 <= w < 1/2 by reflection, with w passed exactly."""
    if w == 0.0:
        return PI2_6, EPS * PI2_6, 0
    low = li2_series(w)
    log_z = math.log1p(-w)
    log_w = math.log(w)
    cross = log_z * log_w
    value = PI2_6 - cross - low.value
    err = low.err_est + EPS * (PI2_6 + 3 * abs(cross) + abs(low.value) + abs(value))
    return value, err, low.terms_used


def _li2_reduced(z: float):
    """(value, err, terms) for real z <= 1, any magnitude."""
    if abs(z) <= R_CUT:
        r = li2_series(z)
        return r.value, r.err_est, r.terms_used
    if z > 0:
        return _li2_one_minus(1.0 - z)
    if z >= -1.0:
        # duplication: Li2(z) = Li2(z^2)/2 - Li2(-z); both pieces have argument in (1/4, 1]
        az = -z
        w_sq = (1.0 - az) * (1.0 + az)
        if w_sq < R_CUT:
            sq, sq_err, sq_terms = _li2_one_minus(w_sq)
        else:
            r = li2_series(az * az)
            sq, sq_err, sq_terms = r.value, r.err_est, r.terms_used
        neg, neg_err, neg_terms = _li2_one_minus(1.0 + z)
        value = 0.5 * sq - neg
        # rounding of w_sq perturbs the argument of Li2(z^2)
        arg_err = EPS * abs(math.log(w_sq)) if w_sq > 0 else 0.0
        err = 0.5 * sq_err + neg_err + arg_err + EPS * (abs(sq) + abs(neg) + abs(value))
        return value, err, sq_terms + neg_terms
    # inversion: Li2(z) = -pi^2/6 - ln(-z)^2/2 - Li2(1/z)
    inv = 1.0 / z
    sub, sub_err, sub_terms = _li2_reduced(inv)
    lg = math.log(-z)
    half_sq = 0.5 * lg * lg
    value = -PI2_6 - half_sq - sub
    arg_err = EPS * abs(math.log1p(-inv))
    err = sub_err + arg_err + EPS * (PI2_6 + 3 * half_sq + abs(sub) + abs(value))
    return value, err, sub_terms


def li2(z: float) -> EvalResult:
    """Li2(z) for real z <= 1 at full double precision.

    >>> li2(-1.0).value == -li2(1.0).value / 2
    True
    """
    z = _finite(z)
    if z > 1.0:
        raise DomainError(f"Li2 is complex for real z > 1 (got {z!r})")
    if z == 1.0:
        return EvalResult(PI2_6, EPS * PI2_6, 0, REDUCED)
    if abs(z) <= R_CUT:
        return li2_series(z)
    value, err, terms = _li2_reduced(z)
    return EvalResult(value, err, terms, REDUCED)


def _chi2_odd_sum_at_one() -> EvalResult:
    """sum 1/(2k+1)^2 over k >= 0: 50 explicit terms plus the asymptotic tail.

    The tail equals trigamma(N + 1/2) / 4, expanded as
    1/x + 1/(2x^2) + 1/(6x^3) - 1/(30x^5) + 1/(42x^7) - 1/(30x^9);
    the first omitted term, 5/(66x^11), bounds the truncation.
    """
    n = 50
    head = [1.0 / ((2 * k + 1) ** 2) for k in range(n)]
    x = n + 0.5
    tail = 0.25 * (1 / x + 1 / (2 * x**2) + 1 / (6 * x**3) - 1 / (30 * x**5) + 1 / (42 * x**7) - 1 / (30 * x**9))
    bound = 0.25 * 5 / (66 * x**11)
    value = math.fsum(head + [tail])
    return EvalResult(value, bound + 2 * EPS * value, n, SERIES)


def chi2(z: float, tol: Tolerance | float | None = None) -> EvalResult:
    """Legendre chi of order two, sum z^(2k+1)/(2k+1)^2, for |z| <= 1.

    For 1/2 < |z| < 1 the Landen-type relation
    chi2(x) + chi2((1-x)/(1+x)) = pi^2/8 - ln(x) ln((1-x)/(1+x)) / 2
    moves the argument below 1/3 before summing.
    """
    z = _finite(z)
    tol = Tolerance.coerce(tol, FULL_PRECISION)
    x = abs(z)
    if x > 1.0:
        raise DomainError(f"chi2 requires |z| <= 1 (got {z!r})")
    sign = -1.0 if z < 0 else 1.0
    if x == 0.0:
        return EvalResult(0.0, 0.0, 0, SERIES)
    if x == 1.0:
        r = _chi2_odd_sum_at_one()
        return EvalResult(sign * r.value, r.err_est, r.terms_used, SERIES)
    if x <= R_CUT:
        r = _power_series(x, 2, 1, tol)
        return EvalResult(sign * r.value, r.err_est, r.terms_used, SERIES)
    w = 1.0 - x
    y = w / (1.0 + x)
    low = _power_series(y, 2, 1, tol)
    cross = 0.5 * math.log(y) * math.log1p(-w)
    value = PI2_8 - low.value - cross
    err = low.err_est + EPS * (PI2_8 + 4 * abs(cross) + abs(low.value) + abs(value))
    return EvalResult(sign * value, err, low.terms_used, REDUCED)


# -- integral routes --------------------------------------------------------

def _neg_log1m_over_t(t: float) -> float:
    """-ln(1 - t) / t with the removable point t = 0 filled in."""
    if abs(t) < 1e-5:
        return 1.0 + t * (0.5 + t * (1.0 / 3.0 + 0.25 * t))
    return -math.log1p(-t) / t


def _neg_log_over_1m(s: float) -> float:
    """-ln(s) / (1 - s), the dilogarithm integrand after t = 1 - s."""
    if s >= 0.5:
        return _neg_log1m_over_t(1.0 - s)
    return -math.log(s) / (1.0 - s)


def _log1p_exp(s: float) -> float:
    return s + math.log1p(math.exp(-s)) if s > 0 else math.log1p(math.exp(s))


def _as_eval(r: QuadResult) -> EvalResult:
    return EvalResult(r.value, r.err_est, r.evals, INTEGRAL)


def li2_via_integral(z: float, tol: Tolerance | float | None = None) -> EvalResult:
    """Li2(z) = -integral over [0, z] of ln(1 - t)/t dt, by quadrature.

    Arguments above 3/4 are integrated in s = 1 - t toward the logarithmic
    point s = 0; arguments below -1 use t = -exp(s) on the part beyond -1.
    """
    z = _finite(z)
    tol = Tolerance.coerce(tol, QUAD_TOL)
    if z > 1.0:
        raise DomainError(f"Li2 is complex for real z > 1 (got {z!r})")
    if z == 0.0:
        return EvalResult(0.0, 0.0, 0, INTEGRAL)
    if 0.0 < z <= 0.75:
        return _as_eval(integrate_adaptive(_neg_log1m_over_t, 0.0, z, tol))
    if z > 0.75:
        return _as_eval(integrate_log_endpoint(_neg_log_over_1m, 1.0 - z, 1.0, tol))
    if z >= -1.0:
        return _as_eval(integrate_adaptive(_neg_log1m_over_t, z, 0.0, tol).scaled(-1.0))
    near = integrate_adaptive(_neg_log1m_over_t, -1.0, 0.0, tol.scaled(0.5))
    far = integrate_adaptive(_log1p_exp, 0.0, math.log(-z), tol.scaled(0.5))
    return _as_eval((near + far).scaled(-1.0))


def _atanh_over_t(t: float) -> float:
    if abs(t) < 1e-5:
        t2 = t * t
        return 1.0 + t2 * (1.0 / 3.0 + 0.2 * t2)
    return math.atanh(t) / t


def _atanh_over_t_at_1m(s: float) -> float:
    """atanh(1 - s) / (1 - s), evaluated from s so the log point stays sharp."""
    if s >= 0.5:
        return _atanh_over_t(1.0 - s)
    return 0.5 * math.log((2.0 - s) / s) / (1.0 - s)


def chi2_via_integral(z: float, tol: Tolerance | float | None = None) -> EvalResult:
    """chi2(z) = integral over [0, z] of atanh(t)/t dt, for |z| <= 1."""
    z = _finite(z)
    tol = Tolerance.coerce(tol, QUAD_TOL)
    x = abs(z)
    if x > 1.0:
        raise DomainError(f"chi2 requires |z| <= 1 (got {z!r})")
    if x == 0.0:
        return EvalResult(0.0, 0.0, 0, INTEGRAL)
    if x <= 0.75:
        r = integrate_adaptive(_atanh_over_t, 0.0, x, tol)
    else:
        r = integrate_log_endpoint(_atanh_over_t_at_1m, 1.0 - x, 1.0, tol)
    return _as_eval(r.scaled(-1.0) if z < 0 else r)
