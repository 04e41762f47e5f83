"""Batch command-line front-end.

Subcommands: nash, contact, ord-d, verify, corpus.  Exit codes: 0 for
success/PASS, 1 for a verification or expectation FAIL, 2 for input errors,
3 for precision or engine errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import run_corpus, summarize
from .errors import (
    ArcNotOnVariety,
    CharDividesDegree,
    DependenceInvalid,
    EngineError,
    FieldMismatch,
    InvalidArc,
    NotInSingularLocus,
    ParseError,
    VariableMismatch,
)
from .problems import parse_problem, run

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_ENGINE = 3

_INPUT_ERRORS = (
    ParseError,
    VariableMismatch,
    FieldMismatch,
    InvalidArc,
    ArcNotOnVariety,
    CharDividesDegree,
    DependenceInvalid,
    NotInSingularLocus,
)


def _add_common_flags(parser):
    parser.add_argument("--precision", type=int, help="series precision (coefficients)")
    parser.add_argument("--max-steps", type=int, help="blow-up step budget")
    parser.add_argument("--seed", type=int, help="sampling seed")
    parser.add_argument("--budget", type=int, help="random arc budget")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--trace", action="store_true", help="include blow-up traces")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcmult",
        description="Exact Nash multiplicity sequences, contact orders and "
        "base-dimension order functions for hypersurface singularities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, help_text in (
        ("nash", "Nash multiplicity sequence of each arc via directed blow-ups"),
        ("contact", "order of contact of each arc with the max-multiplicity locus"),
        ("ord-d", "order function in base dimension via elimination"),
        ("verify", "check min(normalized contact orders) = ord_d by sampling"),
    ):
        p = sub.add_parser(command, help=help_text)
        p.add_argument("file", help="problem file")
        _add_common_flags(p)
    p = sub.add_parser("corpus", help="run bundled problems and compare golden values")
    p.add_argument("pattern", nargs="?", default="*", help="glob over problem names")
    _add_common_flags(p)
    return parser


def _load(args):
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    problem = parse_problem(text, name_hint=path.stem)
    if args.precision is not None:
        problem.options.precision = args.precision
    if args.max_steps is not None:
        problem.options.max_steps = args.max_steps
    if args.seed is not None:
        problem.options.seed = args.seed
    if args.budget is not None:
        problem.options.budget = args.budget
    return problem


_COMMAND_ANALYSIS = {"nash": "nash", "contact": "contact", "ord-d": "ord_d", "verify": "verify"}


def _emit(data, as_json: bool):
    if as_json:
        print(json.dumps(data, sort_keys=True, indent=2))


def _run_single(args) -> int:
    analysis = _COMMAND_ANALYSIS[args.command]
    problem = _load(args)
    problem.analyses = (analysis,)
    report = run(problem)
    payload = report.to_json(include_trace=args.trace)
    if args.json:
        _emit(payload, True)
    else:
        _print_human(problem, report, analysis, args.trace)
    if report.verdict != "PASS":
        return EXIT_FAIL
    return EXIT_OK


def _print_human(problem, report, analysis, trace):
    print(f"problem {problem.name} over "
          f"{'Q' if problem.field.characteristic == 0 else f'F_{problem.field.characteristic}'}: "
          f"{problem.poly_text}")
    data = report.analyses[analysis]
    if analysis == "nash":
        for arc_name, nash in data.items():
            sequence = ",".join(str(m) for m in nash.sequence)
            status = "truncated" if nash.truncated else f"rho={nash.rho}"
            print(f"  nash {arc_name}: [{sequence}] {status}")
            if trace:
                for step in nash.trace:
                    center = ",".join(
                        problem.field.element_str(c) for c in step.center
                    )
                    print(
                        f"    chart {step.chart_variable} center ({center}) "
                        f"m={step.multiplicity} transform {step.transform}"
                    )
    elif analysis == "contact":
        for arc_name, result in data.items():
            print(
                f"  contact {arc_name}: r={_fmt(result.r)} nu={result.nu} "
                f"r_bar={_fmt(result.r_bar)} rho={_fmt(result.rho)}"
            )
    elif analysis == "ord_d":
        print(f"  ord_d = {data.ord_d} via {data.method}; algebra {data.algebra}")
    elif analysis == "verify":
        print(
            f"  verify: {data.verdict} (ord_d={data.ord_d}, min r_bar={_fmt(data.min_r_bar)}, "
            f"arcs={data.arcs_checked}, witness={data.witness_name})"
        )
    for expectation in report.expectations:
        mark = "ok" if expectation["match"] else "MISMATCH"
        print(
            f"  expect {expectation['key']}: {expectation['expected']} "
            f"-> {expectation['computed']} [{mark}]"
        )
    print(f"verdict: {report.verdict}")


def _fmt(value):
    return "inf" if value == float("inf") else str(value)


def _run_corpus(args) -> int:
    overrides = {
        key: value
        for key, value in (
            ("precision", args.precision),
            ("max_steps", args.max_steps),
            ("budget", args.budget),
            ("seed", args.seed),
        )
        if value is not None
    }
    results = run_corpus(args.pattern, overrides=overrides)
    summary = summarize(results)
    if args.json:
        payload = {
            "summary": summary,
            "reports": {
                name: report.to_json(include_trace=args.trace)
                for name, report in results
            },
        }
        _emit(payload, True)
    else:
        if not results:
            print(f"warning: no bundled problem matches {args.pattern!r}")
        width = max((len(name) for name, _ in results), default=4)
        for row in summary["rows"]:
            print(f"{row['name']:<{width}}  {row['verdict']}")
            for mismatch in row["mismatches"]:
                print(f"    {mismatch}")
        print(f"{summary['passed']}/{summary['problems']} problems PASS")
    if summary["problems"] == 0:
        return EXIT_OK
    return EXIT_OK if summary["passed"] == summary["problems"] else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "corpus":
            return _run_corpus(args)
        return _run_single(args)
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EngineError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
