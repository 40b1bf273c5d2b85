"""The `etp` command line: compute, table, verify, oracle-diff.

Also home to the serialization layer: deterministic text, LaTeX, CSV, and
JSON renderings of polynomials, and the JSON polynomial document format
(round-trippable, rationals as decimal strings, never floats).

Exit codes: 0 on success (verify: all checks passed), 1 when verification
finds a failing check or an oracle disagreement, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from .algebra import MultiPoly, Rational
from .families import (
    FamilyKind,
    classical_bernoulli_poly,
    classical_euler_poly,
    frobenius_euler_poly,
    hypergeom_bernoulli_poly,
    truncated_euler_number,
    truncated_euler_poly,
    truncated_euler_poly_oracle,
)
from .identities import (
    DEFAULT_LAMBDAS,
    DEFAULT_M_MAX,
    DEFAULT_N_MAX,
    DEFAULT_R_MAX,
    GridResult,
    IdentityId,
    IdentityReport,
    verify_grid,
)


class UsageError(Exception):
    """Invalid arguments detected after parsing; mapped to exit code 2."""


# -- rational and polynomial rendering ----------------------------------------

_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse `p/q` or integer syntax with an optional leading minus."""
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational: {text!r} (expected p/q or integer)")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def rational_text(value: Rational) -> str:
    """`p/q`, or just `p` for integers."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def poly_text(p: MultiPoly) -> str:
    """Plain-text form: explicit `*` and `^`, graded-lex descending terms."""
    terms = p.sorted_terms()
    if not terms:
        return "0"
    rendered: list[tuple[str, str]] = []
    for (ex, ey), coef in terms:
        factors = []
        if ex:
            factors.append("x" if ex == 1 else f"x^{ex}")
        if ey:
            factors.append("y" if ey == 1 else f"y^{ey}")
        magnitude = abs(coef)
        if not factors or magnitude != 1:
            factors.insert(0, rational_text(magnitude))
        rendered.append(("-" if coef < 0 else "+", "*".join(factors)))
    sign, body = rendered[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in rendered[1:]:
        out += sign + body
    return out


def _rational_latex(value: Rational) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return rf"\frac{{{value.numerator}}}{{{value.denominator}}}"


def poly_latex(p: MultiPoly) -> str:
    """LaTeX form: braced exponents, \\frac for non-integers, units omitted."""
    terms = p.sorted_terms()
    if not terms:
        return "0"
    rendered: list[tuple[str, str]] = []
    for (ex, ey), coef in terms:
        variables = ""
        if ex:
            variables += "x" if ex == 1 else f"x^{{{ex}}}"
        if ey:
            variables += "y" if ey == 1 else f"y^{{{ey}}}"
        magnitude = abs(coef)
        if variables and magnitude == 1:
            body = variables
        else:
            body = _rational_latex(magnitude) + variables
        rendered.append(("-" if coef < 0 else "+", body))
    sign, body = rendered[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in rendered[1:]:
        out += sign + body
    return out


def poly_to_document(p: MultiPoly, metadata: dict | None = None) -> dict:
    """JSON-ready document: ordered terms with decimal-string rationals."""
    doc: dict = {
        "vars": ["x", "y"],
        "terms": [
            {
                "coef": {"num": str(coef.numerator), "den": str(coef.denominator)},
                "exp": [ex, ey],
            }
            for (ex, ey), coef in p.sorted_terms()
        ],
    }
    if metadata is not None:
        doc["metadata"] = metadata
    return doc


def poly_from_document(doc: dict) -> MultiPoly:
    """Inverse of `poly_to_document` (metadata is ignored)."""
    if doc.get("vars") != ["x", "y"]:
        raise ValueError(f"unsupported variable list {doc.get('vars')!r}")
    terms: dict[tuple[int, int], Fraction] = {}
    for term in doc["terms"]:
        ex, ey = (int(e) for e in term["exp"])
        coef = Fraction(int(term["coef"]["num"]), int(term["coef"]["den"]))
        if (ex, ey) in terms:
            raise ValueError(f"duplicate exponent pair ({ex}, {ey})")
        terms[(ex, ey)] = coef
    return MultiPoly(terms)


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2)


def render_poly(p: MultiPoly, fmt: str, metadata: dict | None = None) -> str:
    if fmt == "text":
        return poly_text(p)
    if fmt == "latex":
        return poly_latex(p)
    if fmt == "json":
        return _dump_json(poly_to_document(p, metadata))
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["num", "den", "exp_x", "exp_y"])
        for (ex, ey), coef in p.sorted_terms():
            writer.writerow([coef.numerator, coef.denominator, ex, ey])
        return buffer.getvalue().rstrip("\n")
    raise UsageError(f"unsupported format {fmt!r}")


def _params_to_json(params: dict) -> dict:
    return {
        key: (rational_text(value) if isinstance(value, Fraction) else value)
        for key, value in params.items()
    }


def _params_text(params: dict) -> str:
    return " ".join(f"{key}={_params_to_json(params)[key]}" for key in params)


def report_to_document(report: IdentityReport) -> dict:
    doc: dict = {
        "id": report.id.name,
        "params": _params_to_json(report.params),
        "passed": report.passed,
    }
    if report.premise_passed is not None:
        doc["premise_passed"] = report.premise_passed
    doc["lhs"] = poly_to_document(report.lhs)
    doc["rhs"] = poly_to_document(report.rhs)
    doc["residual"] = poly_to_document(report.residual)
    return doc


# -- argument plumbing ---------------------------------------------------------


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_list_arg(text: str) -> list[Fraction]:
    try:
        return [parse_rational(piece) for piece in text.split(",") if piece != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


_FORMATS = ["text", "json", "csv", "latex"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etp",
        description="Exact truncated Euler polynomial engine: compute family "
        "values, tabulate them, and verify the identity catalog symbolically.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    family_names = [kind.value for kind in FamilyKind]

    compute = sub.add_parser("compute", help="compute one family value")
    compute.add_argument("--family", required=True, choices=family_names)
    compute.add_argument("--m", type=_nonneg_int, default=None, help="order index m")
    compute.add_argument("--n", type=_nonneg_int, required=True, help="degree index n")
    compute.add_argument("--r", type=_nonneg_int, default=0, help="power index r (frobenius-euler)")
    compute.add_argument(
        "--lambda", dest="lam", type=_rational_arg, default=None,
        help="rational parameter (frobenius-euler), e.g. --lambda=1/2",
    )
    compute.add_argument(
        "--at", type=_rational_arg, default=None,
        help="evaluate at this rational x instead of printing the polynomial",
    )
    compute.add_argument("--format", choices=_FORMATS, default="text")
    compute.set_defaults(handler=_cmd_compute)

    table = sub.add_parser(
        "table",
        help="tabulate family values",
        description="Rows are (m, n, value), m ascending then n. For euler "
        "and bernoulli the first column is their fixed order (0 and 1) and "
        "--m-max is ignored; for frobenius-euler it is the power index r, "
        "bounded by --m-max, with --lambda required.",
    )
    table.add_argument("--family", required=True, choices=family_names)
    table.add_argument("--m-max", type=_nonneg_int, default=0)
    table.add_argument("--n-max", type=_nonneg_int, required=True)
    table.add_argument("--lambda", dest="lam", type=_rational_arg, default=None)
    table.add_argument("--format", choices=_FORMATS, default="text")
    table.set_defaults(handler=_cmd_table)

    verify = sub.add_parser("verify", help="verify the identity catalog on a grid")
    verify.add_argument(
        "--ids", default="all",
        help="comma-separated identity ids, or 'all' (default)",
    )
    verify.add_argument("--m-max", type=_nonneg_int, default=DEFAULT_M_MAX)
    verify.add_argument("--n-max", type=_nonneg_int, default=DEFAULT_N_MAX)
    verify.add_argument(
        "--lambda", dest="lams", type=_rational_list_arg, default=None,
        help="comma-separated rational lambdas, e.g. --lambda=-1,2,1/2",
    )
    verify.add_argument("--r-max", type=_nonneg_int, default=DEFAULT_R_MAX)
    verify.add_argument("--format", choices=["text", "json", "csv"], default="text")
    verify.set_defaults(handler=_cmd_verify)

    diff = sub.add_parser(
        "oracle-diff",
        help="compare the recurrence against the series construction",
    )
    diff.add_argument("--m-max", type=_nonneg_int, default=DEFAULT_M_MAX)
    diff.add_argument("--n-max", type=_nonneg_int, default=DEFAULT_N_MAX)
    diff.add_argument("--format", choices=["text", "json"], default="text")
    diff.set_defaults(handler=_cmd_oracle_diff)

    return parser


# -- subcommands ---------------------------------------------------------------

_M_FAMILIES = (
    FamilyKind.TRUNCATED_EULER,
    FamilyKind.TRUNCATED_EULER_NUMBER,
    FamilyKind.HYPERGEOM_BERNOULLI,
)


def _family_value(kind: FamilyKind, m: int | None, n: int, r: int, lam: Fraction | None) -> MultiPoly:
    if kind is FamilyKind.TRUNCATED_EULER:
        return truncated_euler_poly(m, n)
    if kind is FamilyKind.TRUNCATED_EULER_NUMBER:
        return MultiPoly.const(truncated_euler_number(m, n))
    if kind is FamilyKind.HYPERGEOM_BERNOULLI:
        return hypergeom_bernoulli_poly(m, n)
    if kind is FamilyKind.CLASSICAL_BERNOULLI:
        return classical_bernoulli_poly(n)
    if kind is FamilyKind.CLASSICAL_EULER:
        return classical_euler_poly(n)
    if lam is None:
        raise UsageError("--lambda is required for frobenius-euler")
    if lam == 1:
        raise UsageError("lambda must differ from 1")
    return frobenius_euler_poly(n, r, lam)


def _cmd_compute(args: argparse.Namespace) -> int:
    kind = FamilyKind(args.family)
    if kind in _M_FAMILIES and args.m is None:
        raise UsageError(f"--m is required for family {kind.value}")
    metadata: dict = {"family": kind.value, "n": args.n}
    if kind in _M_FAMILIES:
        metadata["m"] = args.m
    if kind is FamilyKind.FROBENIUS_EULER:
        metadata["r"] = args.r
        if args.lam is not None:
            metadata["lambda"] = rational_text(args.lam)
    value = _family_value(kind, args.m, args.n, args.r, args.lam)
    if args.at is not None:
        metadata["at"] = rational_text(args.at)
        value = MultiPoly.const(value.eval_at(args.at))
    print(render_poly(value, args.format, metadata))
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    kind = FamilyKind(args.family)
    rows: list[tuple[int, int, MultiPoly]] = []
    if kind in _M_FAMILIES:
        for m in range(args.m_max + 1):
            for n in range(args.n_max + 1):
                rows.append((m, n, _family_value(kind, m, n, 0, None)))
    elif kind is FamilyKind.CLASSICAL_EULER:
        rows = [(0, n, classical_euler_poly(n)) for n in range(args.n_max + 1)]
    elif kind is FamilyKind.CLASSICAL_BERNOULLI:
        rows = [(1, n, classical_bernoulli_poly(n)) for n in range(args.n_max + 1)]
    else:
        if args.lam is None:
            raise UsageError("--lambda is required for frobenius-euler")
        if args.lam == 1:
            raise UsageError("lambda must differ from 1")
        for r in range(args.m_max + 1):
            for n in range(args.n_max + 1):
                rows.append((r, n, frobenius_euler_poly(n, r, args.lam)))

    if args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["m", "n", "polynomial"])
        for m, n, value in rows:
            writer.writerow([m, n, poly_text(value)])
        print(buffer.getvalue().rstrip("\n"))
    elif args.format == "json":
        payload = {
            "family": kind.value,
            "entries": [
                {"m": m, "n": n, "terms": poly_to_document(value)["terms"]}
                for m, n, value in rows
            ],
        }
        print(_dump_json(payload))
    elif args.format == "latex":
        print("\n".join(f"{m} & {n} & {poly_latex(value)} \\\\" for m, n, value in rows))
    else:
        print("\n".join(f"{m},{n}: {poly_text(value)}" for m, n, value in rows))
    return 0


def _parse_ids(text: str) -> list[IdentityId] | None:
    if text.strip() == "all":
        return None
    ids = []
    for piece in text.split(","):
        name = piece.strip()
        if not name:
            continue
        try:
            ids.append(IdentityId[name])
        except KeyError:
            known = ", ".join(i.name for i in IdentityId)
            raise UsageError(f"unknown identity id {name!r}; known ids: {known}") from None
    if not ids:
        raise UsageError("no identity ids given")
    return ids


def _render_verify_text(result: GridResult) -> str:
    lines = []
    for id_, (ok, bad) in result.by_id().items():
        lines.append(f"{id_.name}: {ok} passed, {bad} failed")
    variants = result.t7_variant_counts()
    if variants:
        joined = ", ".join(f"{name}={count}" for name, count in variants.items())
        lines.append(f"T7_frobenius sign variants: {joined}")
    for report in result.failures:
        lines.append(
            f"FAIL {report.id.name} {_params_text(report.params)}: "
            f"residual={poly_text(report.residual)}"
        )
    lines.append(f"total: {result.passed} passed, {result.failed} failed")
    return "\n".join(lines)


def _cmd_verify(args: argparse.Namespace) -> int:
    ids = _parse_ids(args.ids)
    lams = list(DEFAULT_LAMBDAS) if args.lams is None else args.lams
    if not lams:
        raise UsageError("at least one lambda is required")
    if any(lam == 1 for lam in lams):
        raise UsageError("lambda must differ from 1")
    result = verify_grid(ids, m_max=args.m_max, n_max=args.n_max, lambdas=lams, r_max=args.r_max)
    if args.format == "json":
        payload = {
            "grid": {
                "ids": [i.name for i in (ids if ids is not None else list(IdentityId))],
                "m_max": args.m_max,
                "n_max": args.n_max,
                "lambdas": [rational_text(lam) for lam in lams],
                "r_max": args.r_max,
            },
            "by_id": {i.name: {"passed": ok, "failed": bad} for i, (ok, bad) in result.by_id().items()},
            "t7_variants": result.t7_variant_counts(),
            "failures": [report_to_document(r) for r in result.failures],
            "total": {"passed": result.passed, "failed": result.failed},
        }
        print(_dump_json(payload))
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["id", "params", "passed"])
        for report in result.reports:
            writer.writerow([report.id.name, _params_text(report.params), report.passed])
        print(buffer.getvalue().rstrip("\n"))
    else:
        print(_render_verify_text(result))
    return 0 if result.failed == 0 else 1


def _cmd_oracle_diff(args: argparse.Namespace) -> int:
    comparisons = 0
    disagreements: list[tuple[int, int, MultiPoly, MultiPoly]] = []
    for m in range(args.m_max + 1):
        for n in range(args.n_max + 1):
            comparisons += 1
            recurrence = truncated_euler_poly(m, n)
            oracle = truncated_euler_poly_oracle(m, n)
            if not (recurrence - oracle).is_zero():
                disagreements.append((m, n, recurrence, oracle))
    if args.format == "json":
        payload = {
            "m_max": args.m_max,
            "n_max": args.n_max,
            "comparisons": comparisons,
            "disagreements": [
                {
                    "m": m,
                    "n": n,
                    "recurrence": poly_to_document(recurrence),
                    "series": poly_to_document(oracle),
                }
                for m, n, recurrence, oracle in disagreements
            ],
        }
        print(_dump_json(payload))
    else:
        for m, n, recurrence, oracle in disagreements:
            print(f"m={m} n={n}: recurrence={poly_text(recurrence)} series={poly_text(oracle)}")
        print(f"{comparisons} comparisons, {len(disagreements)} disagreements")
    return 0 if not disagreements else 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
