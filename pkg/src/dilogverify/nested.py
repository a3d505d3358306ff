"""The nested alternating double series and its closed forms.

The inner tail is

    S_n = sum_{k > n} (-1)^k (1/(4k-1) - 1/(4k-3)),

an alternating series whose magnitudes a_k = 2/((4k-1)(4k-3)) are
moments of a positive measure on [0, 1].  That makes the
Cohen-Rodriguez Villegas-Zagier acceleration applicable with its rigorous
error bound, so each tail costs about 0.77 terms per decimal digit.  The
outer sum of squares is truncated at an N fixed up front from the bound
sum_{n > N} S_n^2 <= 1/(192 N^3).
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .numerics import EPS, InvalidInputError, ResourceLimitError, Tolerance
from .quadrature import integrate_adaptive
from .special import SERIES, EvalResult

MAX_OUTER_TERMS = 10**6
CVZ_BASE = 3.0 + math.sqrt(8.0)
MAX_CVZ_TERMS = 60

# pi (pi - 1) / 8, correctly rounded
LIMA_OFFSET = 0.8410014684374457

INNER_TOL = Tolerance(0.0, EPS / 4)
OUTER_TOL = Tolerance(1e-13, 0.0)


@dataclass(frozen=True)
class TailValue:
    """Inner tail S_n with a guaranteed absolute error bound."""

    n: int
    value: float
    bound: float


def term_magnitude(k: int) -> float:
    """|(-1)^k (1/(4k-1) - 1/(4k-3))| = 2 / ((4k-1)(4k-3))."""
    return 2.0 / ((4 * k - 1) * (4 * k - 3))


def leibniz_bound(n: int) -> float:
    """First term of S_n in magnitude, which bounds |S_n|."""
    return term_magnitude(n + 1)


def _check_index(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise InvalidInputError(f"tail index must be an integer >= 1, got {n!r}")
    return int(n)


@lru_cache(maxsize=None)
def _cvz_weights(m: int) -> tuple[float, ...]:
    d = CVZ_BASE**m
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    weights = []
    for k in range(m):
        c = b - c
        weights.append(c / d)
        b = (k + m) * (k - m) * b / ((k + 0.5) * (k + 1))
    return tuple(weights)


def inner_tail(n: int, tol: Tolerance | float | None = None) -> TailValue:
    """S_n by accelerated summation.

    >>> inner_tail(1).value < 0
    True
    """
    n = _check_index(n)
    tol = Tolerance.coerce(tol, INNER_TOL)
    first = term_magnitude(n + 1)
    # |S_n| >= a_{n+1} - a_{n+2}
    target = tol.bound(first - term_magnitude(n + 2))
    m = math.ceil(math.log(2.0 * first / target) / math.log(CVZ_BASE))
    m = min(max(m, 2), MAX_CVZ_TERMS)
    weights = _cvz_weights(m)
    products = [w * term_magnitude(n + 1 + j) for j, w in enumerate(weights)]
    total = math.fsum(products)
    sign = -1.0 if n % 2 else 1.0
    rounding = 4 * EPS * math.fsum(abs(p) for p in products) + EPS * m * first
    bound = 2.0 * first / CVZ_BASE**m + rounding
    return TailValue(n, sign * total, bound)


def inner_tail_direct(n: int, pairs: int) -> TailValue:
    """S_n from ``pairs`` consecutive (k, k+1) pairs, summed as positive terms.

    Each pair collapses to 64k / ((4k-3)(4k-1)(4k+1)(4k+3)).  What is left
    is again alternating with decreasing terms, so it is bounded by its
    first term.
    """
    n = _check_index(n)
    if pairs < 0:
        raise InvalidInputError("pairs must be >= 0")
    terms = []
    for j in range(pairs):
        k = n + 1 + 2 * j
        terms.append(64.0 * k / ((4 * k - 3) * (4 * k - 1) * (4 * k + 1) * (4 * k + 3)))
    total = math.fsum(terms)
    sign = -1.0 if n % 2 else 1.0
    rest = term_magnitude(n + 1 + 2 * pairs)
    # each term carries at most three roundings
    return TailValue(n, sign * total, rest + 4 * EPS * total)


def inner_tail_kernel(n: int, tol: Tolerance | float | None = None) -> TailValue:
    """S_n as the proper integral (-1)^n * int_0^1 (1 - x^2) x^(4n) / (1 + x^4) dx.

    Writing both reciprocals as integrals of powers of x and summing the
    geometric series in -x^4 under the integral gives this kernel.
    """
    n = _check_index(n)
    tol = Tolerance.coerce(tol, Tolerance(1e-15, 1e-15))
    p = 4 * n

    def kernel(x):
        x4 = x * x * x * x
        return (1.0 - x * x) * x**p / (1.0 + x4)

    r = integrate_adaptive(kernel, 0.0, 1.0, tol)
    sign = -1.0 if n % 2 else 1.0
    return TailValue(n, sign * r.value, r.err_est)


def outer_tail_bound(n_terms: int) -> float:
    """Upper bound on sum_{n > N} S_n^2, from |S_n| <= 1/(8 n^2)."""
    return 1.0 / (192.0 * n_terms**3)


def grothendieck_sum(tol: Tolerance | float | None = None, max_terms: int = MAX_OUTER_TERMS) -> EvalResult:
    """sum_{n >= 1} S_n^2 to the requested tolerance.

    ``terms_used`` is the outer truncation N.  Half the budget goes to the
    outer tail, the rest to the inner tails.
    """
    tol = Tolerance.coerce(tol, OUTER_TOL)
    lower = inner_tail(1).value ** 2
    target = tol.bound(lower)
    n_terms = max(1, math.ceil((1.0 / (96.0 * target)) ** (1.0 / 3.0)))
    if n_terms > max_terms:
        raise ResourceLimitError(
            f"tolerance {target:.3g} needs {n_terms} outer terms (limit {max_terms}); "
            f"best achievable bound {outer_tail_bound(max_terms):.3g}",
            err_est=outer_tail_bound(max_terms),
        )
    inner_tol = Tolerance(target, 0.0)
    squares = []
    inner_err = 0.0
    for n in range(1, n_terms + 1):
        s = inner_tail(n, inner_tol)
        squares.append(s.value * s.value)
        inner_err += 2.0 * abs(s.value) * s.bound + s.bound * s.bound
    value = math.fsum(squares)
    err = outer_tail_bound(n_terms) + inner_err + 2 * EPS * value
    return EvalResult(value, err, n_terms, SERIES)


def grothendieck_partial_sums(n_max: int) -> list[float]:
    """Cumulative sums T_N = sum_{n <= N} S_n^2 for N = 1..n_max."""
    out = []
    squares = []
    for n in range(1, n_max + 1):
        s = inner_tail(n).value
        squares.append(s * s)
        out.append(math.fsum(squares))
    return out


def tail_convergence_slope(ns: Sequence[int] = (10, 20, 40, 80, 160, 320), reference: float | None = None) -> float:
    """Least-squares slope of log(G - T_N) against log N."""
    if reference is None:
        reference = grothendieck_sum(Tolerance(1e-15, 0.0)).value
    partial = grothendieck_partial_sums(max(ns))
    xs = [math.log(n) for n in ns]
    ys = [math.log(reference - partial[n - 1]) for n in ns]
    return statistics.linear_regression(xs, ys).slope


def lima_difference_series(tol: Tolerance | float | None = None) -> EvalResult:
    """pi (pi - 1)/8 + 2 * grothendieck_sum, the series form of Li2(r) - Li2(-r), r = sqrt 2 - 1."""
    g = grothendieck_sum(tol)
    value = LIMA_OFFSET + 2.0 * g.value
    return EvalResult(value, 2.0 * g.err_est + EPS * value, g.terms_used, SERIES)
