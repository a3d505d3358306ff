"""Registry of dilogarithm identities and the machinery that checks them.

Each identity is a pair of side evaluators.  A side receives an
:class:`Evaluation` to call the library through, and that object keeps
track of claimed error bounds, work done and which methods were used.
Under ``method="integral"`` every Li2 and chi2 call is routed through
quadrature instead of the series, so each identity can be checked by two
routes that share no code.

Identities whose printed form does not survive numerical checking are
kept with ``expectation="suspected_typo"`` and carry a correction whose
residual is reported next to the as-printed one.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

from . import __version__
from .nested import grothendieck_sum, lima_difference_series
from .numerics import (
    EPS,
    KG,
    LOG_1P_SQRT2,
    PI,
    PI2_6,
    PI2_8,
    SQRT2,
    InvalidInputError,
    Tolerance,
    rel_residual,
)
from .quadrature import QuadResult, arcsin_over_sqrt_integral, log_tanh_integral, sqrt_arcsin_integral
from .special import INTEGRAL, SERIES, EvalResult, chi2, chi2_via_integral, li2, li2_via_integral

VERIFIED = "verified"
SUSPECTED_TYPO = "suspected_typo"

PASS = "pass"
FLAGGED = "flagged"
ERROR = "error"

METHODS = (SERIES, INTEGRAL)

SERIES_DEFAULT = Tolerance(1e-12, 1e-12)
QUAD_DEFAULT = Tolerance(1e-8, 1e-8)

# inner evaluators run this much tighter than the residual threshold
INNER_FACTOR = 1e-2
INNER_FLOOR = 1e-15

R = SQRT2 - 1.0  # exact subtraction
L = LOG_1P_SQRT2
LN2 = math.log(2.0)
LN3 = math.log(3.0)


class UnknownIdentityError(LookupError):
    pass


class Evaluation:
    """Accumulates error bounds and method tags for one side of an identity."""

    def __init__(self, tol: Tolerance, method: str):
        self.tol = tol
        self.method = method
        self.err = 0.0
        self.work = 0
        self._tags: list[str] = []

    def _note(self, tag: str):
        if tag not in self._tags:
            self._tags.append(tag)

    @property
    def tags(self) -> str:
        return "+".join(self._tags) or "none"

    def _take(self, r: EvalResult, coef: float, tag: str) -> float:
        self.err += abs(coef) * r.err_est
        self.work += r.terms_used
        self._note(tag)
        return coef * r.value

    def li2(self, z: float, coef: float = 1.0) -> float:
        if self.method == INTEGRAL:
            return self.li2_integral(z, coef)
        r = li2(z)
        return self._take(r, coef, f"li2[{r.method}]")

    def li2_integral(self, z: float, coef: float = 1.0) -> float:
        return self._take(li2_via_integral(z, self.tol), coef, "li2[integral]")

    def li2_reduced(self, z: float, coef: float = 1.0) -> float:
        r = li2(z)
        return self._take(r, coef, f"li2[{r.method}]")

    def chi2(self, z: float, coef: float = 1.0) -> float:
        if self.method == INTEGRAL:
            return self._take(chi2_via_integral(z, self.tol), coef, "chi2[integral]")
        r = chi2(z)
        return self._take(r, coef, f"chi2[{r.method}]")

    def grothendieck(self, coef: float = 1.0) -> float:
        return self._take(grothendieck_sum(self.tol), coef, "nested-series")

    def lima_series(self, coef: float = 1.0) -> float:
        return self._take(lima_difference_series(self.tol), coef, "nested-series")

    def quad(self, r: QuadResult, coef: float = 1.0, tag: str = "quadrature") -> float:
        self.err += abs(coef) * r.err_est
        self.work += r.evals
        self._note(tag)
        return coef * r.value

    def closed(self, *terms: float) -> float:
        """Sum elementary terms, charging their rounding to the error bound."""
        self.err += 2 * EPS * math.fsum(abs(t) for t in terms)
        self._note("closed-form")
        return math.fsum(terms)


Side = Callable[..., float]


@dataclass(frozen=True)
class Correction:
    rhs: Side
    note: str


@dataclass(frozen=True)
class Identity:
    id: str
    description: str
    paper_ref: str
    lhs: Side
    rhs: Side
    default_tol: Tolerance = SERIES_DEFAULT
    expectation: str = VERIFIED
    correction: Optional[Correction] = None
    grid: tuple = ()
    grid_note: str = ""
    default_method: str = SERIES

    @property
    def sampled(self) -> bool:
        return bool(self.grid)


@dataclass
class IdentityResult:
    id: str
    paper_ref: str
    expectation: str
    lhs_value: Optional[float]
    rhs_value: Optional[float]
    residual: Optional[float]
    status: str
    correction_residual: Optional[float]
    wall_time: float
    methods: str
    tolerance: Tolerance
    # claimed bound on the residual itself, from the sides' err_est
    residual_err: float = 0.0
    evals: int = 0
    message: str = ""

    @property
    def matches_expectation(self) -> bool:
        if self.status == ERROR:
            return False
        if self.expectation == VERIFIED:
            return self.status == PASS
        return self.correction_residual is not None and self.correction_residual <= self.tolerance.threshold


@dataclass
class VerificationReport:
    results: list[IdentityResult]
    tolerance_used: Optional[Tolerance]
    tool_version: str = __version__
    counts: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.counts:
            self.counts = {s: sum(r.status == s for r in self.results) for s in (PASS, FLAGGED, ERROR)}

    @property
    def violations(self) -> list[str]:
        return [r.id for r in self.results if not r.matches_expectation]


class Registry:
    """Ordered, id-unique collection of identities."""

    def __init__(self, identities: Sequence[Identity] = ()):
        self._items: dict[str, Identity] = {}
        for ident in identities:
            self.add(ident)

    def add(self, identity: Identity):
        if identity.id in self._items:
            raise ValueError(f"duplicate identity id {identity.id!r}")
        self._items[identity.id] = identity

    def __getitem__(self, key: str) -> Identity:
        try:
            return self._items[key]
        except KeyError:
            raise UnknownIdentityError(f"no identity registered under {key!r}") from None

    def __contains__(self, key) -> bool:
        return key in self._items

    def __iter__(self) -> Iterator[Identity]:
        return iter(self._items.values())

    def __len__(self) -> int:
        return len(self._items)

    def ids(self) -> list[str]:
        return list(self._items)


# -- evaluation ---------------------------------------------------------------

def _evaluate(side: Side, args: tuple, tol: Tolerance, method: str) -> tuple[EvalResult, str]:
    ctx = Evaluation(tol, method)
    value = side(ctx, *args)
    return EvalResult(value, ctx.err + 2 * EPS * abs(value), ctx.work, method), ctx.tags


def _inner_tol(tol: Tolerance) -> Tolerance:
    return Tolerance(max(tol.abs * INNER_FACTOR, INNER_FLOOR), max(tol.rel * INNER_FACTOR, INNER_FLOOR))


def _residual_err(lhs: EvalResult, rhs: EvalResult) -> float:
    return (lhs.err_est + rhs.err_est) / max(1.0, abs(lhs.value), abs(rhs.value))


def check(identity_id: str, tol: Tolerance | float | None = None, method_hint: str | None = None,
          registry: Registry | None = None) -> IdentityResult:
    """Evaluate both sides of one identity and grade the residual.

    Sampled identities report the worst grid point.  Evaluator failures
    come back as ``status="error"`` with the message attached.
    """
    registry = registry if registry is not None else default_registry()
    ident = registry[identity_id]
    tol = Tolerance.coerce(tol, ident.default_tol)
    method = method_hint or ident.default_method
    if method not in METHODS:
        raise InvalidInputError(f"unknown method hint {method!r}; expected one of {METHODS}")
    inner = _inner_tol(tol)
    points = ident.grid if ident.grid else ((),)
    start = time.perf_counter()
    worst = None
    corr_worst = None
    evals = 0
    lhs_tags = rhs_tags = ""
    try:
        for pt in points:
            args = pt if isinstance(pt, tuple) else (pt,)
            lhs, lhs_tags = _evaluate(ident.lhs, args, inner, method)
            rhs, rhs_tags = _evaluate(ident.rhs, args, inner, method)
            evals += lhs.terms_used + rhs.terms_used
            res = rel_residual(lhs.value, rhs.value)
            if worst is None or res > worst[0]:
                worst = (res, lhs, rhs)
            if ident.correction is not None:
                corr, _ = _evaluate(ident.correction.rhs, args, inner, method)
                evals += corr.terms_used
                c_res = rel_residual(lhs.value, corr.value)
                corr_worst = c_res if corr_worst is None else max(corr_worst, c_res)
    except (ArithmeticError, ValueError, RuntimeError) as exc:
        return IdentityResult(
            id=ident.id, paper_ref=ident.paper_ref, expectation=ident.expectation,
            lhs_value=None, rhs_value=None, residual=None, status=ERROR,
            correction_residual=None, wall_time=time.perf_counter() - start,
            methods=f"method={method}", tolerance=tol, evals=evals,
            message=f"{type(exc).__name__}: {exc}",
        )
    res, lhs, rhs = worst
    status = PASS if res <= tol.threshold else FLAGGED
    methods = f"method={method}; lhs={lhs_tags}; rhs={rhs_tags}"
    if ident.grid_note:
        methods += f"; grid={ident.grid_note}"
    return IdentityResult(
        id=ident.id, paper_ref=ident.paper_ref, expectation=ident.expectation,
        lhs_value=lhs.value, rhs_value=rhs.value, residual=res, status=status,
        correction_residual=corr_worst, wall_time=time.perf_counter() - start,
        methods=methods, tolerance=tol, residual_err=_residual_err(lhs, rhs), evals=evals,
    )


def check_all(tol: Tolerance | float | None = None, registry: Registry | None = None,
              method_hint: str | None = None) -> VerificationReport:
    """Check every identity in registration order.

    With ``tol=None`` each identity is graded at its own default tolerance
    and the report's tolerance is left empty.
    """
    registry = registry if registry is not None else default_registry()
    tol_used = None if tol is None else Tolerance.coerce(tol, SERIES_DEFAULT)
    results = [check(ident.id, tol_used, method_hint, registry) for ident in registry]
    return VerificationReport(results, tol_used)


# -- report serialisation -----------------------------------------------------

def _num(x: Optional[float]) -> Optional[float]:
    """Round-trip through 17 significant digits; non-finite becomes None."""
    if x is None or not math.isfinite(x):
        return None
    return float(f"{x:.17g}")


def result_to_dict(r: IdentityResult) -> dict:
    return {
        "id": r.id,
        "paper_ref": r.paper_ref,
        "lhs": _num(r.lhs_value),
        "rhs": _num(r.rhs_value),
        "residual": _num(r.residual),
        "status": r.status,
        "correction_residual": _num(r.correction_residual),
        "methods": r.methods,
        "wall_ms": round(r.wall_time * 1e3, 3),
    }


def report_to_dict(report: VerificationReport) -> dict:
    tol = report.tolerance_used
    return {
        "tool_version": report.tool_version,
        "tolerance": {"abs": tol.abs if tol else None, "rel": tol.rel if tol else None},
        "results": [result_to_dict(r) for r in report.results],
        "counts": {k: report.counts[k] for k in (PASS, FLAGGED, ERROR)},
    }


# -- the built-in catalogue ---------------------------------------------------

def _uniform(lo: float, hi: float, n: int = 100) -> tuple[float, ...]:
    return tuple(lo + (hi - lo) * i / (n - 1) for i in range(n))


def _brychkov_grid() -> tuple[tuple[float, float], ...]:
    pts = []
    for a in (0.5, 1.0, 2.0):
        for ab in (-0.8, -0.3, 0.2, 0.5, 0.9):
            pts.append((a, ab / a))
    return tuple(pts)


BRYCHKOV_GRID = _brychkov_grid()
BRYCHKOV_NOTE = "a in {0.5,1,2} x ab in {-0.8,-0.3,0.2,0.5,0.9}"


def _lima_lhs(ctx):
    return ctx.li2(R) - ctx.li2(-R)


def _i_low(ctx, coef=1.0):
    return ctx.quad(log_tanh_integral(0.0, 0.5 * L, ctx.tol), coef)


def _i_high(ctx, coef=1.0):
    return ctx.quad(log_tanh_integral(0.5 * L, math.inf, ctx.tol), coef)


def _f2_printed(ctx, a, b):
    u = a * b
    s = a / (4 * b)
    log_ratio = math.log1p(u) - math.log1p(-u)
    diff = ctx.li2(u, s * u) - ctx.li2(-u, s * u)
    return ctx.closed(s * (1 - u * u) / (2 * u) * log_ratio, diff, -s)


def _f2_rewritten(ctx, a, b):
    u = a * b
    u2 = u * u
    s = 1 / (8 * b * b)
    return ctx.closed(s * 2 * (1 - u2) * math.atanh(u), -s * 2 * u, ctx.li2(u2, -s * u2), ctx.li2(u, 4 * s * u2))


def _f1_half_sum(ctx, a, b):
    u = a * b
    return ctx.li2(u, 0.5) + ctx.li2(-u, 0.5)


def _f1_half_diff(ctx, a, b):
    u = a * b
    return ctx.li2(u, 0.5) - ctx.li2(-u, 0.5)


def _f1_rewritten(ctx, a, b):
    u = a * b
    return ctx.li2(u) - ctx.li2(u * u, 0.25)


def _builtin() -> list[Identity]:
    fe = "classical dilogarithm functional equation"
    ram = "Ramanujan's Li2(1/9) identities"
    out = [
        Identity(
            "fe-duplication", "Li2(z) + Li2(-z) = Li2(z^2)/2 on [-1, 1]",
            f"{fe} (duplication)",
            lambda c, z: c.li2(z) + c.li2(-z),
            lambda c, z: c.li2(z * z, 0.5),
            grid=_uniform(-1.0, 1.0), grid_note="100 pts z=-1+2i/99", default_method=INTEGRAL,
        ),
        Identity(
            "fe-landen", "Li2(1-z) + Li2(1-1/z) = -ln(z)^2/2 on (0, 1]",
            f"{fe} (Landen)",
            lambda c, z: c.li2(1 - z) + c.li2(1 - 1 / z),
            lambda c, z: c.closed(-0.5 * math.log(z) ** 2),
            grid=tuple((i + 1) / 100 for i in range(100)), grid_note="100 pts z=(i+1)/100",
            default_method=INTEGRAL,
        ),
        Identity(
            "fe-reflection", "Li2(z) + Li2(1-z) = pi^2/6 - ln(z) ln(1-z) on (0, 1)",
            f"{fe} (Euler reflection)",
            lambda c, z: c.li2(z) + c.li2(1 - z),
            lambda c, z: c.closed(PI2_6, -math.log(z) * math.log1p(-z)),
            grid=tuple((i + 1) / 101 for i in range(100)), grid_note="100 pts z=(i+1)/101",
            default_method=INTEGRAL,
        ),
        Identity(
            "fe-abel", "Li2(-z) - Li2(1-z) + Li2(1-z^2)/2 = -pi^2/12 - ln(z) ln(1+z) on (0, 1)",
            f"{fe} (Abel)",
            lambda c, z: c.li2(-z) - c.li2(1 - z) + c.li2((1 - z) * (1 + z), 0.5),
            lambda c, z: c.closed(-0.5 * PI2_6, -math.log(z) * math.log1p(z)),
            grid=tuple((i + 1) / 101 for i in range(100)), grid_note="100 pts z=(i+1)/101",
            default_method=INTEGRAL,
        ),
        Identity(
            "fe-inversion", "Li2(z) + Li2(1/z) = -pi^2/6 - ln(-z)^2/2 on (-inf, -1]",
            f"{fe} (inversion)",
            lambda c, z: c.li2(z) + c.li2(1 / z),
            lambda c, z: c.closed(-PI2_6, -0.5 * math.log(-z) ** 2),
            grid=tuple(-100 / (i + 1) for i in range(100)), grid_note="100 pts z=-1/t, t=(i+1)/100",
            default_method=INTEGRAL,
        ),
        Identity(
            "ramanujan-li2-1-3", "Li2(1/3) - Li2(1/9)/6 = pi^2/18 - ln(3)^2/6", ram,
            lambda c: c.li2(1 / 3) - c.li2(1 / 9, 1 / 6),
            lambda c: c.closed(PI2_6 / 3, -LN3**2 / 6),
        ),
        Identity(
            "ramanujan-li2-m1-2", "Li2(-1/2) + Li2(1/9)/6 = -pi^2/18 + ln2 ln3 - ln(2)^2/2 - ln(3)^2/3", ram,
            lambda c: c.li2(-0.5) + c.li2(1 / 9, 1 / 6),
            lambda c: c.closed(-PI2_6 / 3, LN2 * LN3, -LN2**2 / 2, -LN3**2 / 3),
        ),
        Identity(
            "ramanujan-li2-1-4", "Li2(1/4) + Li2(1/9)/3 = pi^2/18 + 2 ln2 ln3 - 2 ln(2)^2 - 2 ln(3)^2/3", ram,
            lambda c: c.li2(0.25) + c.li2(1 / 9, 1 / 3),
            lambda c: c.closed(PI2_6 / 3, 2 * LN2 * LN3, -2 * LN2**2, -2 * LN3**2 / 3),
        ),
        Identity(
            "ramanujan-li2-m1-3", "Li2(-1/3) - Li2(1/9)/3 = -pi^2/18 + ln(3)^2/6", ram,
            lambda c: c.li2(-1 / 3) - c.li2(1 / 9, 1 / 3),
            lambda c: c.closed(-PI2_6 / 3, LN3**2 / 6),
        ),
        Identity(
            "ramanujan-li2-m1-8", "Li2(-1/8) + Li2(1/9) = -ln(9/8)^2/2", ram,
            lambda c: c.li2(-0.125) + c.li2(1 / 9),
            lambda c: c.closed(-0.5 * math.log(9 / 8) ** 2),
        ),
        Identity(
            "bailey-pi2", "pi^2 = 36 Li2(1/2) - 36 Li2(1/4) - 12 Li2(1/8) + 6 Li2(1/64)",
            "Bailey, Borwein and Plouffe pi^2 relation",
            lambda c: c.closed(PI * PI),
            lambda c: c.li2(0.5, 36) - c.li2(0.25, 36) - c.li2(0.125, 12) + c.li2(1 / 64, 6),
        ),
        Identity(
            "lima-eq", "Li2(r) - Li2(-r) = pi^2/8 - ln(1+sqrt2)^2/4, r = sqrt2 - 1 (as printed)",
            "Lima relation for Li2(sqrt2 - 1) - Li2(1 - sqrt2)",
            _lima_lhs,
            lambda c: c.closed(PI2_8, -0.25 * L * L),
            expectation=SUSPECTED_TYPO,
            correction=Correction(
                lambda c: c.closed(PI2_8, -0.5 * L * L),
                "coefficient 1/2 instead of 1/4 on ln(1+sqrt2)^2, i.e. 2 chi2(sqrt2 - 1)",
            ),
        ),
        Identity(
            "gro-sum", "sum_n S_n^2 = pi/16 - ln(1+sqrt2)^2/4",
            "closed form of the nested alternating double series",
            lambda c: c.grothendieck(),
            lambda c: c.closed(PI / 16, -0.25 * L * L),
        ),
        Identity(
            "lima-series", "Li2(r) - Li2(-r) = pi(pi-1)/8 + 2 sum_n S_n^2",
            "double-series representation of Li2(r) - Li2(-r)",
            lambda c: c.lima_series(),
            _lima_lhs,
        ),
        Identity(
            "kg-def", "ln(1+sqrt2)^2 = pi^2 / (4 K_G^2)",
            "Krivine bound K_G = pi / (2 ln(1+sqrt2))",
            lambda c: c.closed(L * L),
            lambda c: c.closed(PI * PI / (4 * KG * KG)),
        ),
        Identity(
            "brychkov-f2", "int_0^a sqrt(a^2-x^2) arcsin(bx) dx = a/(4b){(1-u^2)/(2u) ln((1+u)/(1-u)) + u[Li2(u)-Li2(-u)] - 1}, u=ab",
            "Brychkov handbook 4.1.6 formula 2 (integrated on [0, a])",
            lambda c, a, b: c.quad(sqrt_arcsin_integral(a, b, c.tol)),
            _f2_printed,
            default_tol=QUAD_DEFAULT, grid=BRYCHKOV_GRID, grid_note=BRYCHKOV_NOTE,
        ),
        Identity(
            "brychkov-f2-rewritten", "int_0^a sqrt(a^2-x^2) arcsin(bx) dx = {2(1-u^2) atanh u - 2u - u^2[Li2(u^2) - 4 Li2(u)]}/(8b^2)",
            "Brychkov handbook 4.1.6 formula 2, rewritten with the duplication formula",
            lambda c, a, b: c.quad(sqrt_arcsin_integral(a, b, c.tol)),
            _f2_rewritten,
            default_tol=QUAD_DEFAULT, grid=BRYCHKOV_GRID, grid_note=BRYCHKOV_NOTE,
        ),
        Identity(
            "brychkov-f2-special", "Li2(r) - Li2(-r) = 4 int_0^1 sqrt(1-x^2) arcsin(rx) dx + (1+sqrt2)[1 + ln(2-sqrt2) - ln(2)/2]",
            "Brychkov handbook 4.1.6 formula 2 at a = 1, b = sqrt2 - 1",
            _lima_lhs,
            lambda c: c.closed(
                c.quad(sqrt_arcsin_integral(1.0, R, c.tol), 4.0),
                (1 + SQRT2) * (1 + math.log(2 - SQRT2) - LN2 / 2),
            ),
            default_tol=QUAD_DEFAULT,
        ),
        Identity(
            "valdebenito-1", "pi^2 = 4 ln(1+sqrt2)^2 - 16 int_{L/2}^inf ln(tanh x) dx",
            "Valdebenito pi^2 relation, tail integral",
            lambda c: c.closed(PI * PI),
            lambda c: c.closed(4 * L * L, _i_high(c, -16.0)),
            default_tol=QUAD_DEFAULT,
        ),
        Identity(
            "valdebenito-2", "pi^2 = -4 ln(1+sqrt2)^2 - 16 int_0^{L/2} ln(tanh x) dx",
            "Valdebenito pi^2 relation, head integral",
            lambda c: c.closed(PI * PI),
            lambda c: c.closed(-4 * L * L, _i_low(c, -16.0)),
            default_tol=QUAD_DEFAULT,
        ),
        Identity(
            "valdebenito-sum", "int_0^inf ln(tanh x) dx = -pi^2/8 (sum of the two relations)",
            "sum of the two Valdebenito relations",
            lambda c: _i_low(c) + _i_high(c),
            lambda c: c.closed(-PI2_8),
            default_tol=QUAD_DEFAULT,
        ),
        Identity(
            "lntanh-boxed", "Li2(r) - Li2(-r) = -(1/2) int_0^{L/2} ln tanh - (3/2) int_{L/2}^inf ln tanh (as printed)",
            "ln tanh form of Li2(r) - Li2(-r), split at L/2",
            _lima_lhs,
            lambda c: c.closed(_i_low(c, -0.5), _i_high(c, -1.5)),
            default_tol=QUAD_DEFAULT, expectation=SUSPECTED_TYPO,
            correction=Correction(
                lambda c: _i_high(c, -2.0),
                "one-term form -2 int_{L/2}^inf ln(tanh x) dx; printed form equals pi^2/8 - L^2/4, the printed Lima value",
            ),
        ),
        Identity(
            "lntanh-equivalent", "Li2(r) - Li2(-r) = -(3/2) int_0^inf ln tanh + int_0^{L/2} ln tanh (as printed)",
            "ln tanh form of Li2(r) - Li2(-r), whole half-line",
            _lima_lhs,
            lambda c: c.closed(c.quad(log_tanh_integral(0.0, math.inf, c.tol), -1.5), _i_low(c)),
            default_tol=QUAD_DEFAULT, expectation=SUSPECTED_TYPO,
            correction=Correction(
                lambda c: c.closed(PI * PI / 4, _i_low(c, 2.0)),
                "one-term form pi^2/4 + 2 int_0^{L/2} ln(tanh x) dx",
            ),
        ),
        Identity(
            "brychkov-f1-plus", "int_0^a arcsin(bx)/sqrt(a^2-x^2) dx = [Li2(ab) + Li2(-ab)]/2 (as printed)",
            "Brychkov handbook 4.1.6 formula 1 (general b)",
            lambda c, a, b: c.quad(arcsin_over_sqrt_integral(a, b, c.tol)),
            _f1_half_sum,
            default_tol=QUAD_DEFAULT, grid=BRYCHKOV_GRID, grid_note=BRYCHKOV_NOTE,
            expectation=SUSPECTED_TYPO,
            correction=Correction(_f1_half_diff, "minus sign: [Li2(ab) - Li2(-ab)]/2 = chi2(ab)"),
        ),
        Identity(
            "brychkov-f1-rewritten", "int_0^a arcsin(bx)/sqrt(a^2-x^2) dx = [4 Li2(ab) - Li2(a^2 b^2)]/4",
            "Brychkov handbook 4.1.6 formula 1, rewritten with the duplication formula",
            lambda c, a, b: c.quad(arcsin_over_sqrt_integral(a, b, c.tol)),
            _f1_rewritten,
            default_tol=QUAD_DEFAULT, grid=BRYCHKOV_GRID, grid_note=BRYCHKOV_NOTE,
        ),
        Identity(
            "brychkov-f1-special", "int_0^1 arcsin(rx)/sqrt(1-x^2) dx = [4 Li2(r) - Li2(3-2 sqrt2)]/4",
            "Brychkov handbook 4.1.6 formula 1 at a = 1, b = sqrt2 - 1",
            lambda c: c.quad(arcsin_over_sqrt_integral(1.0, R, c.tol)),
            lambda c: c.li2(R) - c.li2(3 - 2 * SQRT2, 0.25),
            default_tol=QUAD_DEFAULT,
        ),
        Identity(
            "chi2-relation", "chi2(z) = [Li2(z) - Li2(-z)]/2 on [-0.9, 0.9]",
            "Legendre chi function as the odd part of Li2",
            lambda c, z: c.chi2(z),
            lambda c, z: c.li2(z, 0.5) - c.li2(-z, 0.5),
            grid=_uniform(-0.9, 0.9), grid_note="100 pts z=-0.9+1.8i/99",
        ),
        Identity(
            "li2-integral-rep", "Li2(z) by series/reduction equals -int_0^z ln(1-t)/t dt",
            "integral representation of Li2",
            lambda c, z: c.li2_reduced(z),
            lambda c, z: c.li2_integral(z),
            default_tol=Tolerance(1e-10, 1e-10),
            grid=(0.1, -0.1, 0.3, -0.3, 0.5, -0.5, R, -R, 0.9, 0.999, 1.0, -1.0, -3.0, -100.0),
            grid_note="+-0.1,+-0.3,+-0.5,+-r,0.9,0.999,1,-1,-3,-100",
        ),
    ]
    return out


def register_builtin() -> Registry:
    """A fresh registry holding every built-in identity."""
    return Registry(_builtin())


@lru_cache(maxsize=1)
def default_registry() -> Registry:
    return register_builtin()
