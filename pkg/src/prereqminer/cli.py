"""Batch command line over the refinement core.

Subcommands: ``refine`` (one run), ``sweep`` (several alphas over shared
strengths), ``validate`` (report every ingestion violation), ``serve``
(start the HTTP service).

Exit codes: 0 success, 2 input file not found, 3 validation failure,
4 internal error. Documents go to ``--out`` (``-`` for stdout); summaries
go to stdout, diagnostics to stderr. With ``--out -`` the summary moves
to stderr so stdout stays clean for the document.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import InvalidAlphaSweep, PrereqError
from .export import export_dot, export_model_json
from .ingestion import course_issues, grade_issues, parse_course, parse_grades_csv
from .membership import validate_thresholds
from .miner import FinalDomainModel, Verdict, refine_model, sweep_alpha, validate_alpha

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4

DEFAULT_ADDR = "127.0.0.1:8510"
DEFAULT_DATA_DIR = "./prereq-data"


def _formatter(prog):
    return argparse.HelpFormatter(prog, width=78)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prereqminer",
        description="Refine an expert prerequisite model with fuzzy evidence "
                    "from learner grades.",
        formatter_class=_formatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    refine = sub.add_parser(
        "refine", formatter_class=_formatter,
        help="refine one course and write the model document",
        description="Run one refinement and write the final model document. "
                    "Prints a one-line kept/reversed/dropped summary.")
    refine.add_argument("--course", required=True, help="course JSON file")
    refine.add_argument("--grades", required=True, help="grades CSV file")
    refine.add_argument("--s1", required=True, type=float,
                        help="lower grade-variation threshold (negative)")
    refine.add_argument("--s2", required=True, type=float,
                        help="upper threshold of the correct-prerequisite set (positive)")
    refine.add_argument("--s3", required=True, type=float,
                        help="upper threshold of the reversed set (greater than --s2)")
    refine.add_argument("--alpha", required=True, type=float,
                        help="minimum strength for a meaningful relationship, in [0, 1]")
    refine.add_argument("--out", default="-",
                        help="output path for the model document, '-' for stdout")
    refine.add_argument("--format", choices=("json", "dot"), default="json",
                        help="model document format")

    sweep = sub.add_parser(
        "sweep", formatter_class=_formatter,
        help="refine at several alphas and tabulate verdict counts",
        description="Refine at several alphas (strengths computed once) and "
                    "print a CSV table of verdict counts per alpha. With "
                    "--out-dir, also write one model document per alpha.")
    sweep.add_argument("--course", required=True, help="course JSON file")
    sweep.add_argument("--grades", required=True, help="grades CSV file")
    sweep.add_argument("--s1", required=True, type=float,
                       help="lower grade-variation threshold (negative)")
    sweep.add_argument("--s2", required=True, type=float,
                       help="upper threshold of the correct-prerequisite set (positive)")
    sweep.add_argument("--s3", required=True, type=float,
                       help="upper threshold of the reversed set (greater than --s2)")
    sweep.add_argument("--alphas", required=True,
                       help="comma-separated ascending alphas, e.g. 0.2,0.5")
    sweep.add_argument("--out-dir",
                       help="directory for per-alpha model documents (model-<alpha>.json)")

    validate = sub.add_parser(
        "validate", formatter_class=_formatter,
        help="check a course (and optionally grades) and report every violation",
        description="Validate a course document and optionally a grades file, "
                    "reporting every violation rather than stopping at the "
                    "first. Exits 0 only when clean.")
    validate.add_argument("--course", required=True, help="course JSON file")
    validate.add_argument("--grades", help="grades CSV file")

    serve = sub.add_parser(
        "serve", formatter_class=_formatter,
        help="start the HTTP service",
        description="Start the HTTP service. Flags win over the PREREQ_ADDR "
                    "and PREREQ_DATA_DIR environment variables.")
    serve.add_argument("--addr",
                       help=f"listen address host:port (default {DEFAULT_ADDR})")
    serve.add_argument("--data-dir",
                       help=f"course store directory (default {DEFAULT_DATA_DIR})")

    return parser


def _read_file(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _verdict_counts(model: FinalDomainModel) -> dict[str, int]:
    counts = {v: 0 for v in Verdict}
    for report in model.verdicts:
        counts[report.verdict] += 1
    return {
        "kept": counts[Verdict.KEPT],
        "reversed": counts[Verdict.REVERSED],
        "dropped": counts[Verdict.DROPPED],
        "insufficient": counts[Verdict.INSUFFICIENT_DATA],
    }


def _summary_line(model: FinalDomainModel) -> str:
    counts = _verdict_counts(model)
    return (f"kept={counts['kept']} reversed={counts['reversed']} "
            f"dropped={counts['dropped']} insufficient={counts['insufficient']}")


def _load_inputs(args):
    course = parse_course(_read_file(args.course))
    matrix = parse_grades_csv(_read_file(args.grades), course)
    return course, matrix


def cmd_refine(args) -> int:
    course, matrix = _load_inputs(args)
    thresholds = validate_thresholds(args.s1, args.s2, args.s3)
    cut = validate_alpha(args.alpha)
    model = refine_model(course, matrix, thresholds, cut)
    document = (export_model_json(model) if args.format == "json"
                else export_dot(model, course))
    for note in model.diagnostics:
        print(f"note: {note}", file=sys.stderr)
    if args.out == "-":
        sys.stdout.write(document)
        print(_summary_line(model), file=sys.stderr)
    else:
        Path(args.out).write_text(document, encoding="utf-8")
        print(_summary_line(model))
    return EXIT_OK


def _parse_alphas(text: str) -> list[float]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise InvalidAlphaSweep("no alphas given")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise InvalidAlphaSweep(f"alphas must be numbers: {exc}") from exc


def cmd_sweep(args) -> int:
    course, matrix = _load_inputs(args)
    thresholds = validate_thresholds(args.s1, args.s2, args.s3)
    alphas = _parse_alphas(args.alphas)
    models = sweep_alpha(course, matrix, thresholds, alphas)
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    print("alpha,kept,reversed,dropped,insufficient")
    for alpha, model in zip(alphas, models):
        counts = _verdict_counts(model)
        print(f"{alpha:g},{counts['kept']},{counts['reversed']},"
              f"{counts['dropped']},{counts['insufficient']}")
        if out_dir is not None:
            (out_dir / f"model-{alpha:g}.json").write_text(
                export_model_json(model), encoding="utf-8")
    return EXIT_OK


def cmd_validate(args) -> int:
    issues, course = course_issues(_read_file(args.course))
    for issue in issues:
        print(f"{args.course}: {issue.code}: {issue.message}")
    if args.grades is not None:
        if course is None:
            print(f"{args.grades}: skipped (course document is invalid)")
        else:
            grade_problems, _ = grade_issues(_read_file(args.grades), course)
            issues = issues + grade_problems
            for issue in grade_problems:
                print(f"{args.grades}: {issue.code}: {issue.message}")
    if issues:
        return EXIT_VALIDATION
    print("ok")
    return EXIT_OK


class InvalidAddr(PrereqError):
    """Listen address is not host:port."""


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    addr = args.addr or os.environ.get("PREREQ_ADDR") or DEFAULT_ADDR
    data_dir = args.data_dir or os.environ.get("PREREQ_DATA_DIR") or DEFAULT_DATA_DIR
    host, _, port_text = addr.rpartition(":")
    if not host or not port_text.isdigit():
        raise InvalidAddr(f"--addr must be host:port, got {addr!r}")
    app = create_app(Path(data_dir))
    uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
    return EXIT_OK


_COMMANDS = {
    "refine": cmd_refine,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_INPUT
    except (IsADirectoryError, PermissionError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrereqError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:  # noqa: BLE001 - last-resort mapping to exit code
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
