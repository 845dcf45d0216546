"""Command-line interface.  Exit status: 0 all checks pass, 1 violation, 2 input error."""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from .dsl import DSLError, PresentationDocument, evaluate, format_value, parse_document, parse_expression
from .gca import AlgebraError
from .hopf import check_antipode, check_bialgebra, check_obstruction, sweedler_obstruction
from .poisson import check_poisson_axioms
from .report import SCHEMA_VERSION, Report
from .uea import (
    build_uea,
    check_confluence,
    check_defining_identities,
    check_differential_e,
    check_hopf_e,
    normal_form,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def corpus_names() -> list[str]:
    return sorted(p.name for p in resources.files("dgpoisson").joinpath("corpus").iterdir() if p.name.endswith(".dgp"))


def read_source(path: str) -> str:
    """Read a file, falling back to the shipped corpus for bare names like ``heisenberg.dgp``."""
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    name = os.path.basename(path)
    if name == path and name in corpus_names():
        return resources.files("dgpoisson").joinpath("corpus", name).read_text(encoding="utf-8")
    raise DSLError(f"cannot read {path!r}")


def load(path: str) -> PresentationDocument:
    return parse_document(read_source(path))


def _params(doc: PresentationDocument, path: str, **kw) -> dict:
    P = doc.presentation
    F = P.field
    out = {
        "file": os.path.basename(path),
        "field": "QQ" if F.characteristic == 0 else f"GF({F.characteristic})",
        "bracket_degree": P.p,
        "hopf": doc.hopf_mode or "none",
    }
    out.update(kw)
    return out


def run_check(doc: PresentationDocument, path: str, degree_bound: int, seed: int, samples: int) -> Report:
    suites = [check_poisson_axioms(doc.presentation, degree_bound, seed, samples)]
    if doc.hopf is not None:
        suites.append(check_bialgebra(doc.hopf, degree_bound, seed, samples))
        suites.append(check_antipode(doc.hopf, degree_bound, seed, samples))
        suites.append(check_obstruction(doc.hopf, degree_bound, require_vanishing=False))
    return Report(suites, _params(doc, path, degree_bound=degree_bound, seed=seed, samples=samples))


def run_uea_check(doc: PresentationDocument, path: str, length: int, degree_bound: int, seed: int,
                  samples: int, d_length: int) -> Report:
    R = build_uea(doc.presentation, doc.hopf)
    suites = [
        check_defining_identities(R, degree_bound, seed, samples),
        check_confluence(R, length),
        check_differential_e(R, d_length),
    ]
    if doc.hopf is not None:
        suites.extend(check_hopf_e(R, length).suites)
    params = _params(doc, path, length=length, degree_bound=degree_bound, seed=seed, samples=samples,
                     d_length=d_length)
    return Report(suites, params)


def _emit_report(report: Report, fmt: str) -> int:
    sys.stdout.write(report.to_json() if fmt == "json" else report.to_text())
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _emit_value(fmt: str, payload: dict, text: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps({"schema": SCHEMA_VERSION, **payload}, indent=2) + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_check(args) -> int:
    doc = load(args.file)
    return _emit_report(run_check(doc, args.file, args.degree_bound, args.seed, args.samples), args.format)


def cmd_eval(args) -> int:
    doc = load(args.file)
    node = parse_expression(args.expr, args.context)
    value = evaluate(node, doc.structure, args.context)
    text = format_value(value, doc.presentation.field)
    _emit_value(args.format, {"expression": args.expr, "context": args.context, "value": text}, text)
    return EXIT_OK


def cmd_uea_check(args) -> int:
    doc = load(args.file)
    rep = run_uea_check(doc, args.file, args.len, args.degree_bound, args.seed, args.samples, args.d_len)
    return _emit_report(rep, args.format)


def cmd_uea_nf(args) -> int:
    doc = load(args.file)
    R = build_uea(doc.presentation, doc.hopf)
    node = parse_expression(args.expr, "uea")
    value = evaluate(node, doc.structure, "uea", uea=R)
    if isinstance(value, tuple):
        value = tuple(normal_form(R, v) if hasattr(v, "system") else v for v in value)
    text = format_value(value, R.field)
    _emit_value(args.format, {"expression": args.expr, "normal_form": text}, text)
    return EXIT_OK


def cmd_obstruction(args) -> int:
    doc = load(args.file)
    if doc.hopf is None:
        raise DSLError(f"{args.file}: no Hopf structure")
    value = evaluate(parse_expression(args.expr, "algebra"), doc.structure, "algebra")
    a = doc.presentation.algebra.coerce(value)
    left, right = sweedler_obstruction(doc.hopf, a)
    _emit_value(args.format, {"expression": args.expr, "left": str(left), "right": str(right),
                              "vanishes": left.is_zero()}, str(left))
    return EXIT_OK


def cmd_report(args) -> int:
    doc = load(args.file)
    rep = run_check(doc, args.file, args.degree_bound, args.seed, args.samples)
    ue = run_uea_check(doc, args.file, args.len, min(args.degree_bound, 2), args.seed, args.uea_samples, args.d_len)
    rep.suites.extend(ue.suites)
    rep.parameters.update(length=args.len, d_length=args.d_len, uea_samples=args.uea_samples)
    return _emit_report(rep, args.format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS,
                        help="output format (default: text)")

    parser = argparse.ArgumentParser(
        prog="dgpoisson",
        description="Check DG Poisson (Hopf) algebra presentations and their enveloping algebras.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def bounds(p, degree=3, samples=25):
        p.add_argument("--degree-bound", type=int, default=degree, metavar="N")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=samples, help="random homogeneous samples")

    p = sub.add_parser("check", parents=[common], help="Poisson, bialgebra and antipode suites")
    p.add_argument("file")
    bounds(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("file")
    p.add_argument("-e", "--expr", required=True)
    p.add_argument("--context", choices=("auto", "algebra", "tensor", "uea"), default="auto")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("uea", parents=[common], help="enveloping algebra commands")
    usub = p.add_subparsers(dest="uea_command", required=True)
    q = usub.add_parser("check", parents=[common], help="defining identities, confluence, Hopf structure")
    q.add_argument("file")
    q.add_argument("--len", type=int, default=3, help="word / overlap length bound")
    q.add_argument("--d-len", type=int, default=4, help="word length bound for (d^e)^2 = 0")
    bounds(q, degree=2, samples=200)
    q.set_defaults(func=cmd_uea_check)
    q = usub.add_parser("nf", parents=[common], help="PBW normal form of an expression")
    q.add_argument("file")
    q.add_argument("-e", "--expr", required=True)
    q.set_defaults(func=cmd_uea_nf)

    p = sub.add_parser("obstruction", parents=[common], help="Sweedler obstruction {S(a1), a2}")
    p.add_argument("file")
    p.add_argument("-e", "--expr", required=True)
    p.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("report", parents=[common], help="every suite in one report")
    p.add_argument("file")
    bounds(p)
    p.add_argument("--len", type=int, default=3)
    p.add_argument("--d-len", type=int, default=4)
    p.add_argument("--uea-samples", type=int, default=200)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "format"):
        args.format = "text"
    try:
        return args.func(args)
    except (DSLError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
