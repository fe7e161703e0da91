"""Command-line front end."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from gcjacobi import dcoeff, jacobi, reduced, subalg, suites
from gcjacobi.config import Settings, load_settings
from gcjacobi.errors import GcError, ParseError
from gcjacobi.gc import GcElem, lambda_bracket
from gcjacobi.models import SCHEMA_VERSION, Report
from gcjacobi.parse import parse_poly
from gcjacobi.ring import MPoly, format_poly
from gcjacobi.virasoro import VirasoroElem, decompose, project, q_basis, r_basis

logger = logging.getLogger(__name__)

Rows = list[dict[str, Any]]


def parse_matrix(text: str) -> GcElem:
    """Rows separated by ';', entries by ','; a single polynomial is a 1 x 1 element."""
    rows = []
    offset = 0
    for row_text in text.split(";"):
        row = []
        for entry in row_text.split(","):
            try:
                row.append(parse_poly(entry))
            except ParseError as e:
                raise ParseError(e.message, offset + e.column) from e
            offset += len(entry) + 1
        rows.append(row)
    return GcElem.from_rows(rows)


def _sigma(text: str) -> MPoly:
    try:
        return parse_poly(text)
    except ParseError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--config", type=Path, default=None, help="JSON settings file")
    common.add_argument("--verbose", action="store_true")
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    return common


def _family_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sign", choices=("+", "-"), default=None)
    parser.add_argument("--S", dest="s", type=int, default=None)
    variant = parser.add_mutually_exclusive_group()
    variant.add_argument("--k", type=int, default=None)
    variant.add_argument("--star", choices=("transpose", "symplectic", "custom"), default=None)
    parser.add_argument("--N", dest="n", type=int, default=None)
    parser.add_argument("--deg", type=int, default=None)
    parser.add_argument("--full", action="store_true", help="sweep the whole spanning set, not only generators")


def build_parser() -> argparse.ArgumentParser:
    """The full argument parser."""
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="gcjacobi", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    basis = commands.add_parser("basis", parents=[common], help="quasi-primary polynomials")
    basis.add_argument("--sigma", type=_sigma, default="s")
    basis.add_argument("--n-max", type=int, default=2)
    basis.add_argument("--kind", choices=("q", "r"), default="q")

    bracket = commands.add_parser("bracket", parents=[common], help="lambda-bracket of two elements")
    bracket.add_argument("a")
    bracket.add_argument("b")

    reduce = commands.add_parser("reduce", parents=[common], help="decompose into quasi-primaries")
    reduce.add_argument("a")
    reduce.add_argument("--sigma", type=_sigma, default="s")

    dtable = commands.add_parser("dtable", parents=[common], help="structure constants d_{m,n,k}")
    dtable.add_argument("--m-max", type=int, default=2)
    dtable.add_argument("--n-max", type=int, default=2)
    dtable.add_argument("--sigma", type=_sigma, default="s")

    jacobi_parser = commands.add_parser("jacobi", help="Jacobi polynomials")
    jacobi_commands = jacobi_parser.add_subparsers(dest="action", required=True)
    poly = jacobi_commands.add_parser("poly", parents=[common])
    poly.add_argument("--alpha", type=_sigma, default="a")
    poly.add_argument("--beta", type=_sigma, default="b")
    poly.add_argument("--n", type=int, default=2)
    parity = jacobi_commands.add_parser("parity", parents=[common])
    parity.add_argument("--S", dest="s", type=int, default=None)
    parity.add_argument("--n-max", type=int, default=None)
    quotient = jacobi_commands.add_parser("quotient", parents=[common], help="reduced quotients of P_n^(-S,S)")
    quotient.add_argument("--S", dest="s", type=int, default=1)
    quotient.add_argument("--n-max", type=int, default=6)
    jacobi_commands.add_parser("checks", parents=[common])

    dcoeff_parser = commands.add_parser("dcoeff", help="coefficients D(sigma; m, n, l)")
    dcoeff_commands = dcoeff_parser.add_subparsers(dest="action", required=True)
    table = dcoeff_commands.add_parser("table", parents=[common])
    table.add_argument("--m-max", type=int, default=2)
    table.add_argument("--n-max", type=int, default=2)
    facts = dcoeff_commands.add_parser("facts", parents=[common])
    facts.add_argument("--n-max", type=int, default=8)
    factor = dcoeff_commands.add_parser("factor", parents=[common], help="even and odd factorizations of D")
    factor.add_argument("--n-max", type=int, default=6)
    expansion = dcoeff_commands.add_parser("expansion", parents=[common])
    expansion.add_argument("--m-max", type=int, default=6)
    rank = dcoeff_commands.add_parser("rank", parents=[common])
    rank.add_argument("--xs", default="", help="comma separated rationals")
    rank.add_argument("--ys", default="", help="comma separated rationals")
    rank.add_argument("--d", type=int, default=None)

    verify = commands.add_parser("verify", parents=[common], help="verification suites")
    verify.add_argument("suite", choices=(*suites.FAMILY_CHECKS, *suites.SUITES, "all"))
    _family_arguments(verify)
    return parser


def _single_family(args: argparse.Namespace, settings: Settings) -> subalg.SubalgebraSpec | None:
    """The family selected by flags, or None to sweep every family."""
    if args.s is None:
        selectors = (("sign", args.sign), ("k", args.k), ("star", args.star), ("N", args.n))
        given = [f"--{flag}" for flag, value in selectors if value is not None]
        if given:
            msg = f"{', '.join(given)} select a single family and need --S"
            raise GcError(msg)
        return None
    n = args.n if args.n is not None else 1
    return suites.family_spec(args.sign or "+", args.s, n, k=args.k, star=args.star, star_matrix=settings.star_matrix)


def _family_report(args: argparse.Namespace, settings: Settings) -> Report:
    limits = settings.limits
    degree = args.deg if args.deg is not None else limits.degree
    workers = args.workers or limits.workers

    def check(spec: subalg.SubalgebraSpec) -> Report:
        return suites.family_check(
            args.suite, spec, degree, full=args.full, workers=workers, m_max=limits.reduced_m_max
        )

    spec = _single_family(args, settings)
    if spec is not None:
        return check(spec)
    if args.suite == "submodule":
        sizes = limits.model_copy(update={"size_max": limits.submodule_size_max})
        specs = suites.submodule_families(suites.families(sizes, settings))
    else:
        specs = suites.families(limits, settings)
    return suites.family_sweep(check, specs, args.suite)


def _verify(args: argparse.Namespace, settings: Settings) -> Report:
    if args.suite in suites.FAMILY_CHECKS:
        return _family_report(args, settings)
    if args.suite == "all":
        report = Report(suite="all")
        for name in suites.SUITES:
            report.merge(suites.run_suite(name, settings.limits, args.seed))
        for name in suites.FAMILY_CHECKS:
            report.merge(_family_report(argparse.Namespace(**{**vars(args), "suite": name}), settings))
        return report
    return suites.run_suite(args.suite, settings.limits, args.seed)


def _split_rationals(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _rows(args: argparse.Namespace, settings: Settings) -> Rows:
    match args.command, getattr(args, "action", None):
        case "basis", _:
            basis = q_basis if args.kind == "q" else r_basis
            return [{"n": n, args.kind.upper(): format_poly(basis(args.sigma, n))} for n in range(args.n_max + 1)]
        case "bracket", _:
            result = lambda_bracket(parse_matrix(args.a), parse_matrix(args.b))
            return [
                {"lambda": k, "coefficient": str(c), "product": str(result.product(k))}
                for k, c in result.coefficients.items()
            ]
        case "reduce", _:
            a = parse_matrix(args.a)
            virasoro = VirasoroElem.from_sigma(args.sigma, a.n)
            rows: Rows = [{"d^i": i, "part": str(part)} for i, part in decompose(a, virasoro).items()]
            rows.append({"d^i": "projection", "part": str(project(a, virasoro))})
            return rows
        case "dtable", _:
            return [
                {"m": c.m, "n": c.n, "k": c.k, "d": format_poly(c.value)}
                for c in reduced.d_table(args.m_max, args.n_max, args.sigma)
            ]
        case "jacobi", "poly":
            params = jacobi.JacobiParams.of(args.alpha, args.beta)
            return [{"n": args.n, "P": format_poly(jacobi.jacobi_poly(params, args.n))}]
        case "jacobi", "quotient":
            return [
                {"S": args.s, "n": n, "quotient": format_poly(jacobi.parity_factorization(args.s, n).quotient)}
                for n in range(args.s, args.n_max + 1)
            ]
        case "dcoeff", "table":
            return [
                {"m": c.m, "n": c.n, "l": c.l, "D": format_poly(c.value)}
                for c in dcoeff.d_table(args.m_max, args.n_max)
            ]
    msg = f"unhandled command {args.command}"
    raise GcError(msg)


def _report(args: argparse.Namespace, settings: Settings) -> Report | None:
    limits = settings.limits
    match args.command, getattr(args, "action", None):
        case "verify", _:
            return _verify(args, settings)
        case "jacobi", "parity":
            n_max = args.n_max if args.n_max is not None else limits.jacobi_n_max
            if args.s is None:
                return suites.parity_suite(limits.s_max, n_max)
            report = Report(suite="parity")
            for n in range(args.s, n_max + 1):
                result = jacobi.parity_factorization(args.s, n)
                report.add({"S": args.s, "n": n}, passed=result.ok, detail=result.detail)
            return report
        case "jacobi", "checks":
            return suites.jacobi_suite(limits.jacobi_n_max)
        case "dcoeff", "facts":
            report = Report(suite="facts")
            for m in range(args.n_max + 1):
                for n in range(m, args.n_max + 1):
                    report.merge(dcoeff.verify_facts(m, n))
            return report
        case "dcoeff", "factor":
            report = Report(suite="factor")
            for n in range(args.n_max + 1):
                for m in range(n + 1):
                    for l in range(m + n + 1):
                        result = dcoeff.factorization(m, n, l)
                        form = "even" if l >= n - m else "odd"
                        report.add({"m": m, "n": n, "l": l, "form": form}, passed=result.ok, detail=result.detail)
            return report
        case "dcoeff", "expansion":
            report = Report(suite="expansion")
            for m in range(args.m_max + 1):
                for n in range(args.m_max + 1):
                    report.add({"m": m, "n": n}, passed=dcoeff.product_expansion_check(m, n))
            return report
        case "dcoeff", "rank":
            xs, ys = _split_rationals(args.xs), _split_rationals(args.ys)
            d = args.d if args.d is not None else len(xs) + len(ys)
            report = Report(suite="rank")
            report.add({"xs": xs, "ys": ys, "d": d}, passed=dcoeff.rank_certificate(xs, ys, d))
            return report
    return None


def _render_rows(rows: Rows, fmt: str, command: str) -> str:
    if fmt == "json":
        return json.dumps({"schema": SCHEMA_VERSION, "command": command, "rows": rows}, indent=2)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buffer.getvalue().rstrip("\n")
    return "\n".join("  ".join(f"{key}={value}" for key, value in row.items()) for row in rows)


def _render_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["params", "pass", "detail"])
        for case in report.cases:
            writer.writerow([json.dumps(case.params, sort_keys=True), case.passed, case.detail])
        return buffer.getvalue().rstrip("\n")
    lines = [f"{report.suite}: {len(report.cases)} cases, {len(report.failures)} failed"]
    lines += [f"FAIL {json.dumps(case.params, sort_keys=True)} {case.detail}".rstrip() for case in report.failures]
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, execute one command and print its output; returns the exit status."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    try:
        settings = load_settings(args.config)
        report = _report(args, settings)
        if report is None:
            print(_render_rows(_rows(args, settings), args.format, args.command))  # noqa: T201
            return 0
    except (GcError, ValidationError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)  # noqa: T201
        return 2
    print(_render_report(report, args.format))  # noqa: T201
    return 0 if report.ok else 1


def main() -> None:
    """Console entry point."""
    sys.exit(run())
