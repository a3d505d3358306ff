"""Command-line front end: ``eval``, ``verify``, ``list`` and ``bench``.

Exit codes: 0 when every requested check matched its registered
expectation, 1 when one did not, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from . import __version__
from .identities import (
    ERROR,
    FLAGGED,
    METHODS,
    PASS,
    UnknownIdentityError,
    VerificationReport,
    check,
    check_all,
    default_registry,
    report_to_dict,
)
from .nested import grothendieck_sum, inner_tail
from .numerics import DomainError, InvalidInputError, ResourceLimitError, Tolerance
from .special import chi2, li2, li2_via_integral

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

FUNCTIONS = ("li2", "chi2", "li2-integral", "grothendieck-sum", "inner-tail")


class UsageError(Exception):
    pass


def fmt(x: Optional[float]) -> str:
    return "null" if x is None or not math.isfinite(x) else f"{x:.17g}"


def _tolerance(text: str) -> float:
    try:
        t = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(t) and t > 0):
        raise argparse.ArgumentTypeError("tolerance must be a positive finite number")
    return t


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dilogverify", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate one function")
    ev.add_argument("function", choices=FUNCTIONS)
    ev.add_argument("argument", nargs="?", help="real argument x, or index n for inner-tail")
    ev.add_argument("--tol", type=_tolerance)
    ev.add_argument("--format", choices=("text", "json"), default="text")

    ver = sub.add_parser("verify", help="check identities")
    which = ver.add_mutually_exclusive_group(required=True)
    which.add_argument("--id", dest="identity")
    which.add_argument("--all", action="store_true")
    ver.add_argument("--tol", type=_tolerance)
    ver.add_argument("--method", choices=METHODS, help="override each identity's default route")
    ver.add_argument("--strict", action="store_true", help="treat expected flags as failures")
    ver.add_argument("--format", choices=("text", "json"), default="text")
    ver.add_argument("--out", help="write the report here instead of standard output")

    sub.add_parser("list", help="print the identity catalogue")

    bench = sub.add_parser("bench", help="time every identity")
    bench.add_argument("--tol", type=_tolerance)
    return p


def _tol(value: Optional[float]) -> Optional[Tolerance]:
    return None if value is None else Tolerance(value, value)


def _eval(args) -> tuple[str, int]:
    fn = args.function
    tol = _tol(args.tol)
    if fn == "grothendieck-sum":
        if args.argument is not None:
            raise UsageError("grothendieck-sum takes no argument")
        r = grothendieck_sum(tol)
        payload = {"function": fn, "argument": None, "value": r.value, "err_est": r.err_est,
                   "terms_used": r.terms_used, "method": r.method}
    elif fn == "inner-tail":
        if args.argument is None:
            raise UsageError("inner-tail needs an index n >= 1")
        try:
            n = int(args.argument)
        except ValueError:
            raise UsageError(f"inner-tail index must be an integer, got {args.argument!r}") from None
        t = inner_tail(n, tol)
        payload = {"function": fn, "argument": n, "value": t.value, "err_est": t.bound,
                   "terms_used": None, "method": "accelerated"}
    else:
        if args.argument is None:
            raise UsageError(f"{fn} needs a real argument")
        try:
            x = float(args.argument)
        except ValueError:
            raise UsageError(f"not a number: {args.argument!r}") from None
        if fn == "li2":
            r = li2(x)
        elif fn == "chi2":
            r = chi2(x, tol)
        else:
            r = li2_via_integral(x, tol)
        payload = {"function": fn, "argument": x, "value": r.value, "err_est": r.err_est,
                   "terms_used": r.terms_used, "method": r.method}
    if args.format == "json":
        return json.dumps(payload) + "\n", EXIT_OK
    arg = "" if payload["argument"] is None else f"({payload['argument']})"
    text = f"{fn}{arg} = {fmt(payload['value'])}  err_est={fmt(payload['err_est'])}"
    if payload["terms_used"] is not None:
        text += f"  terms={payload['terms_used']}"
    return text + f"  method={payload['method']}\n", EXIT_OK


def render_text(report: VerificationReport) -> str:
    lines = []
    for r in report.results:
        note = "expected" if r.matches_expectation else "UNEXPECTED"
        line = (f"{r.status.upper():<7} {r.id:<24} residual={fmt(r.residual)} lhs={fmt(r.lhs_value)} "
                f"rhs={fmt(r.rhs_value)} correction_residual={fmt(r.correction_residual)} [{note}]")
        if r.message:
            line += f" {r.message}"
        lines.append(line)
    c = report.counts
    lines.append(f"counts: pass={c[PASS]} flagged={c[FLAGGED]} error={c[ERROR]}")
    return "\n".join(lines) + "\n"


def _exit_for(report: VerificationReport, strict: bool) -> int:
    if report.violations:
        return EXIT_MISMATCH
    if strict and (report.counts[FLAGGED] or report.counts[ERROR]):
        return EXIT_MISMATCH
    return EXIT_OK


def _verify(args) -> tuple[str, int]:
    tol = _tol(args.tol)
    if args.all:
        report = check_all(tol, method_hint=args.method)
    else:
        if args.identity not in default_registry():
            raise UsageError(f"unknown identity id {args.identity!r}; run 'dilogverify list'")
        report = VerificationReport([check(args.identity, tol, args.method)], tol)
    if args.format == "json":
        out = json.dumps(report_to_dict(report), indent=2) + "\n"
    else:
        out = render_text(report)
    code = _exit_for(report, args.strict)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
        return "", code
    return out, code


def _list(args) -> tuple[str, int]:
    lines = []
    for ident in default_registry():
        tol = ident.default_tol.threshold
        lines.append(f"{ident.id:<24} {ident.expectation:<15} tol={tol:g} method={ident.default_method:<8} "
                     f"{ident.description}  [{ident.paper_ref}]")
    return "\n".join(lines) + "\n", EXIT_OK


def _bench(args) -> tuple[str, int]:
    report = check_all(_tol(args.tol))
    lines = [f"{'id':<24} {'wall_ms':>10} {'evals':>10}  status"]
    for r in report.results:
        lines.append(f"{r.id:<24} {r.wall_time * 1e3:>10.3f} {r.evals:>10d}  {r.status}")
    total = sum(r.wall_time for r in report.results) * 1e3
    lines.append(f"{'total':<24} {total:>10.3f}")
    return "\n".join(lines) + "\n", EXIT_OK


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        handler = {"eval": _eval, "verify": _verify, "list": _list, "bench": _bench}[args.verb]
        out, code = handler(args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (DomainError, InvalidInputError, ResourceLimitError, UnknownIdentityError, OSError) as exc:
        stderr.write(f"dilogverify: {exc}\n")
        return EXIT_USAGE
    stdout.write(out)
    return code


def main():
    sys.exit(run())
