"""Adaptive quadrature for the integral representations.

The base rule is the embedded 7-point Gauss / 15-point Kronrod pair.  A
panel's error estimate is the raw difference between the two rules
(floored at the rounding level of the panel), so a single panel is
certified exact for polynomials up to degree 13.  Refinement is global:
the panel with the largest estimate is bisected until the summed estimate
meets the request.  Panels are processed in a fixed order, so values and
evaluation counts are reproducible run to run.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .numerics import EPS, InvalidInputError, ResourceLimitError, Tolerance

MAX_DEPTH = 60
MAX_PANELS = 20000
# geometric levels used to cluster panels toward a singular endpoint
CLUSTER_LEVELS = 60

# QUADPACK qk15 abscissae and weights, ordered from the outside in.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
# Gauss weights for the nodes _XGK[1], _XGK[3], _XGK[5] and the centre.
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

DEFAULT_TOL = Tolerance(1e-12, 1e-12)


@dataclass(frozen=True)
class Integrand:
    """A scalar integrand plus what is known about its awkward spots.

    ``singularity`` is one of ``"none"``, ``"log_at_lo"`` or
    ``"algebraic_at_lo"`` (an integrable power ``(x - lo)**p`` with
    ``p > -1``).  ``decay`` is ``"none"`` or ``"exponential_tail"``; for a
    tail, ``|eval(x)| <= decay_const * exp(-decay_rate * x)`` is assumed
    beyond ``domain_lo``.  When ``decay_const`` is None it is estimated by
    sampling.
    """

    eval: Callable[[float], float]
    domain_lo: float = -math.inf
    domain_hi: float = math.inf
    singularity: str = "none"
    decay: str = "none"
    decay_rate: float = 1.0
    decay_const: Optional[float] = None

    def __post_init__(self):
        if self.singularity not in ("none", "log_at_lo", "algebraic_at_lo"):
            raise InvalidInputError(f"unknown singularity kind {self.singularity!r}")
        if self.decay not in ("none", "exponential_tail"):
            raise InvalidInputError(f"unknown decay kind {self.decay!r}")
        if not self.decay_rate > 0:
            raise InvalidInputError("decay_rate must be positive")

    def __call__(self, x: float) -> float:
        return self.eval(x)


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_est: float
    evals: int

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(self.value + other.value, self.err_est + other.err_est, self.evals + other.evals)

    def scaled(self, c: float) -> "QuadResult":
        return QuadResult(c * self.value, abs(c) * self.err_est, self.evals)


FunctionLike = Union[Integrand, Callable[[float], float]]


def _as_callable(f: FunctionLike) -> Callable[[float], float]:
    return f.eval if isinstance(f, Integrand) else f


def _checked(f: Callable[[float], float]) -> Callable[[float], float]:
    def g(x):
        y = f(x)
        if not math.isfinite(y):
            raise InvalidInputError(f"integrand is not finite at x={x!r}")
        return y

    return g


def _gk15(f, a: float, b: float):
    """Kronrod value, error estimate, and whether the estimate sits at the rounding floor."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = f(c)
    resk = fc * _WGK[7]
    resg = fc * _WG[3]
    resabs = abs(fc) * _WGK[7]
    for j in range(7):
        dx = h * _XGK[j]
        f1 = f(c - dx)
        f2 = f(c + dx)
        resk += _WGK[j] * (f1 + f2)
        resabs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2:
            resg += _WG[j // 2] * (f1 + f2)
    h = abs(h)
    diff = abs(resk - resg) * h
    floor = 8.0 * EPS * resabs * h
    return resk * h, max(diff, floor), diff <= floor


def _refine(f, panels, tol: Tolerance, extra_value: float = 0.0, extra_err: float = 0.0,
            extra_evals: int = 0) -> QuadResult:
    heap = []
    values = {}
    errs = {}
    evals = extra_evals
    total_val = extra_value
    total_err = extra_err
    seq = 0

    def push(a, b, depth):
        nonlocal seq, evals, total_val, total_err
        v, e, at_floor = _gk15(f, a, b)
        evals += 15
        values[seq] = v
        errs[seq] = e
        total_val += v
        total_err += e
        mid = 0.5 * (a + b)
        if not (at_floor or mid <= a or mid >= b):
            heapq.heappush(heap, (-e, seq, a, b, depth))
        seq += 1

    for a, b in panels:
        push(a, b, 0)

    while True:
        if total_err <= tol.bound(total_val) or not heap:
            break
        _, key, a, b, depth = heapq.heappop(heap)
        if depth >= MAX_DEPTH or seq >= MAX_PANELS:
            value = math.fsum(values.values()) + extra_value
            err = math.fsum(errs.values()) + extra_err
            raise ResourceLimitError(
                f"subdivision limit reached (depth {depth}, {seq} panels); err_est {err:.3g}",
                value=value,
                err_est=err,
            )
        total_val -= values.pop(key)
        total_err -= errs.pop(key)
        mid = 0.5 * (a + b)
        push(a, mid, depth + 1)
        push(mid, b, depth + 1)

    value = math.fsum(values.values()) + extra_value
    err = math.fsum(errs.values()) + extra_err
    return QuadResult(value, err, max(evals, 1))


def _check_interval(lo: float, hi: float):
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise InvalidInputError(f"interval endpoints must be finite, got [{lo!r}, {hi!r}]")
    if not lo < hi:
        raise InvalidInputError(f"need lo < hi, got [{lo!r}, {hi!r}]")


def integrate_adaptive(f: FunctionLike, lo: float, hi: float, tol: Tolerance | float | None = None) -> QuadResult:
    """Integrate a smooth ``f`` over the finite interval ``[lo, hi]``.

    >>> r = integrate_adaptive(lambda x: x, 0.0, 1.0)
    >>> r.value, r.evals
    (0.5, 15)
    """
    tol = Tolerance.coerce(tol, DEFAULT_TOL)
    _check_interval(lo, hi)
    return _refine(_checked(_as_callable(f)), [(lo, hi)], tol)


def _power_model(eps: float, f1: float, f2: float):
    """Fit ``A * d**p`` through (eps, f1), (eps/2, f2); return (A, p) or None."""
    if f1 == 0.0 or f2 == 0.0 or (f1 > 0) != (f2 > 0):
        return None
    p = -math.log2(f2 / f1)
    if p <= -0.999:
        return None
    return f1 / eps**p, p


def _remnant(f, lo: float, eps: float):
    """Estimate the integral over ``[lo, lo + eps]`` left after clustering."""
    f1, f2, f3 = f(lo + eps), f(lo + 0.5 * eps), f(lo + 0.25 * eps)
    m1 = _power_model(eps, f1, f2)
    m2 = _power_model(0.5 * eps, f2, f3)
    if m1 is None or m2 is None:
        scale = max(abs(f1), abs(f2), abs(f3))
        return 0.0, eps * scale * (2.0 + abs(math.log(eps))), 3
    r1 = m1[0] * eps ** (m1[1] + 1) / (m1[1] + 1)
    r2 = m2[0] * eps ** (m2[1] + 1) / (m2[1] + 1)
    return r1, abs(r1 - r2) + 4 * EPS * abs(r1), 3


def integrate_log_endpoint(f: FunctionLike, lo: float, hi: float, tol: Tolerance | float | None = None) -> QuadResult:
    """Integrate ``f`` with an integrable singularity at ``lo``.

    The interval is first cut into geometrically shrinking panels
    ``[lo + h/2**(k+1), lo + h/2**k]``, so every panel sits at a distance
    from ``lo`` comparable to its width and the rule sees an analytic
    function.  ``f`` is never evaluated at ``lo``.  The sliver below the
    last level is estimated from a local power-law fit, and the fit's
    disagreement with a second fit goes into ``err_est``.
    """
    tol = Tolerance.coerce(tol, DEFAULT_TOL)
    _check_interval(lo, hi)
    g = _checked(_as_callable(f))
    h = hi - lo
    levels = CLUSTER_LEVELS
    spacing = 64 * math.ulp(lo) if lo != 0.0 else 0.0
    while levels > 1 and h * 2.0**-levels <= spacing:
        levels -= 1
    edges = [lo + h * 2.0**-k for k in range(levels + 1)]
    edges[0] = hi
    panels = [(edges[k + 1], edges[k]) for k in range(levels)]
    rem, rem_err, rem_evals = _remnant(g, lo, edges[-1] - lo)
    return _refine(g, panels, tol, rem, rem_err, rem_evals)


def _tail_scale(f, lo: float, rate: float, decay_const: Optional[float]) -> tuple[float, int]:
    """Bound M with |f(x)| <= M exp(-rate (x - lo)) for x >= lo."""
    if decay_const is not None:
        return decay_const * math.exp(-rate * lo), 0
    samples = []
    for j in range(17):
        x = lo + j / rate
        samples.append(abs(f(x)) * math.exp(j))
    return 2.0 * max(samples), len(samples)


def integrate_decaying_tail(f: FunctionLike, lo: float, tol: Tolerance | float | None = None) -> QuadResult:
    """Integrate an exponentially decaying ``f`` over ``[lo, inf)``.

    With ``u = exp(-rate (x - lo))`` the tail becomes an integral over
    ``(0, 1]`` of a function that stays bounded as ``u -> 0``.  The range is
    truncated at the ``u`` where the analytic tail bound drops below a tenth
    of the absolute request; that bound is added to ``err_est``.
    """
    tol = Tolerance.coerce(tol, DEFAULT_TOL)
    if not math.isfinite(lo):
        raise InvalidInputError(f"lower limit must be finite, got {lo!r}")
    raw = _as_callable(f)
    if isinstance(f, Integrand):
        rate, decay_const = f.decay_rate, f.decay_const
    else:
        rate, decay_const = 1.0, None
    scale, sample_evals = _tail_scale(raw, lo, rate, decay_const)
    if scale == 0.0:
        return QuadResult(0.0, 0.0, max(sample_evals, 1))
    if tol.abs > 0:
        tail_target = tol.abs / 10
    else:
        tail_target = tol.rel * scale / rate / 10
    u_min = min(tail_target * rate / scale, 0.5)
    tail_err = scale * u_min / rate

    def g(u):
        return raw(lo - math.log(u) / rate) / (rate * u)

    inner_tol = Tolerance(0.9 * tol.abs, tol.rel)
    body = _refine(_checked(g), [(u_min, 1.0)], inner_tol, extra_evals=sample_evals)
    return QuadResult(body.value, body.err_est + tail_err, body.evals)


# -- integrands of the representations -------------------------------------

def log_tanh(x: float) -> float:
    """ln(tanh x) for x > 0, accurate where tanh x rounds to 1."""
    if x < 0.5:
        return math.log(math.tanh(x))
    e = math.exp(-2.0 * x)
    return math.log1p(-2.0 * e / (1.0 + e))


LOG_TANH_TAIL = Integrand(log_tanh, 0.0, math.inf, decay="exponential_tail", decay_rate=2.0)


def log_tanh_integral(lo: float, hi: float, tol: Tolerance | float | None = None) -> QuadResult:
    """Integral of ln(tanh x) over ``[lo, hi]`` with ``0 <= lo < hi <= inf``."""
    tol = Tolerance.coerce(tol, DEFAULT_TOL)
    if not 0.0 <= lo < hi:
        raise InvalidInputError(f"need 0 <= lo < hi, got [{lo!r}, {hi!r}]")
    if lo == 0.0:
        cut = min(hi, 1.0)
        part = integrate_log_endpoint(Integrand(log_tanh, 0.0, cut, singularity="log_at_lo"), 0.0, cut, tol.scaled(0.5))
        if hi == cut:
            return part
        if math.isinf(hi):
            return part + integrate_decaying_tail(LOG_TANH_TAIL, cut, tol.scaled(0.5))
        return part + integrate_adaptive(log_tanh, cut, hi, tol.scaled(0.5))
    if math.isinf(hi):
        return integrate_decaying_tail(LOG_TANH_TAIL, lo, tol)
    return integrate_adaptive(log_tanh, lo, hi, tol)


def _check_ab(a: float, b: float, strict: bool):
    if not (math.isfinite(a) and math.isfinite(b)) or a <= 0:
        raise InvalidInputError(f"need finite a > 0 and finite b, got a={a!r}, b={b!r}")
    ab = abs(a * b)
    if ab > 1 or (strict and ab == 1):
        raise InvalidInputError(f"|a b| = {ab!r} leaves the real range of arcsin")


def sqrt_arcsin_integral(a: float, b: float, tol: Tolerance | float | None = None) -> QuadResult:
    """Integral over [0, a] of sqrt(a^2 - x^2) * arcsin(b x).

    Computed after x = a sin(t), which turns it into
    a^2 * integral over [0, pi/2] of cos(t)^2 arcsin(a b sin t).
    """
    tol = Tolerance.coerce(tol, DEFAULT_TOL)
    _check_ab(a, b, strict=True)
    ab = a * b
    a2 = a * a

    def g(t):
        c = math.cos(t)
        return c * c * math.asin(ab * math.sin(t))

    return integrate_adaptive(g, 0.0, 0.5 * math.pi, tol.scaled(1.0 / a2)).scaled(a2)


def arcsin_over_sqrt_integral(a: float, b: float, tol: Tolerance | float | None = None) -> QuadResult:
    """Integral over [0, a] of arcsin(b x) / sqrt(a^2 - x^2), via x = a sin(t)."""
    tol = Tolerance.coerce(tol, DEFAULT_TOL)
    _check_ab(a, b, strict=False)
    ab = a * b
    return integrate_adaptive(lambda t: math.asin(ab * math.sin(t)), 0.0, 0.5 * math.pi, tol)
