"""Command-line interface.

Exit statuses: 0 success, 1 verification failure, 2 input error,
3 internal invariant breach.
"""
from __future__ import annotations

import argparse
import logging
import sys
import warnings
from pathlib import Path

from . import __version__
from .bench import is_generator_spec, load_source, report_for, run_suite
from .converter import complete_permutation, plan, verify
from .core import DEFAULT_MAX_INPUTS
from .errors import ParityRevError, PlaWarning
from .parity import (ENUMERATION_LIMIT, count_parity_preserving, enumerate_parity_preserving,
                     min_extra_bits, profile)
from .pla import read_annotated, write_pla, write_report, write_reports_csv

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("parityrev")


class InputError(Exception):
    pass


def _emit(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load(source: str, args):
    try:
        return load_source(source, strict=args.strict, max_inputs=args.max_n)
    except (ParityRevError, ValueError, OSError) as exc:
        raise InputError(f"{source}: {exc}") from exc


def cmd_analyze(args) -> int:
    t = _load(args.file, args)
    prof = profile(t)
    p = plan(prof, t.num_inputs, t.num_outputs)
    print(f"function: {t.name or args.file}")
    print(f"inputs: {t.num_inputs}  outputs: {t.num_outputs}  patterns: {prof.num_groups}")
    groups = sorted(prof, key=lambda g: (-g.size, g.pattern.value))
    shown = groups if args.all else groups[:16]
    print("pattern  match  mismatch")
    for g in shown:
        print(f"{str(g.pattern):>7}  {g.match_count:5d}  {g.mismatch_count:8d}")
    if len(shown) < len(groups):
        print(f"... {len(groups) - len(shown)} more (use --all)")
    print(f"bound: {min_extra_bits(prof)}")
    print(f"plan: garbage {p.garbage}, ancilla {p.ancilla}, distinguishing bits "
          f"{p.distinguishing_bits}, largest class {p.max_group}")
    return EXIT_OK


def cmd_convert(args) -> int:
    t = _load(args.file, args)
    if not t.name:
        t.name = Path(args.file).stem
    result, report = report_for(t)
    if args.complete:
        try:
            result = complete_permutation(result, max_inputs=args.max_n)
        except ParityRevError as exc:
            raise InputError(str(exc)) from exc
    check = verify(result)
    if not check.ok:
        print("internal error: converted table failed verification", file=sys.stderr)
        print(check.summary(), file=sys.stderr)
        return EXIT_INTERNAL
    _emit(write_pla(result), args.output)
    if args.report:
        _emit(write_report(report, csv_mode=args.csv), args.report)
    log.info("%s: garbage %d, ancilla %d", t.name, report.garbage, report.ancilla)
    return EXIT_OK


def cmd_verify(args) -> int:
    if is_generator_spec(args.file):
        raise InputError("verify expects a PLA file")
    try:
        text = Path(args.file).read_text()
        t = read_annotated(text, name=Path(args.file).stem, max_inputs=args.max_n)
    except (ParityRevError, ValueError, OSError) as exc:
        raise InputError(f"{args.file}: {exc}") from exc
    if t.width != t.num_outputs:
        raise InputError(f"{args.file}: not square ({t.width} inputs, {t.num_outputs} outputs)")
    report = verify(t)
    print(report.summary())
    if report.ok:
        return EXIT_OK
    if report.parity_violations:
        print("parity violated on rows: " + ", ".join(report.parity_violations))
    if report.duplicate_outputs:
        print("repeated outputs: " + ", ".join(report.duplicate_outputs))
    return EXIT_VERIFY


def cmd_count(args) -> int:
    if args.n < 1:
        raise InputError("n must be at least 1")
    if args.oracle and args.n > ENUMERATION_LIMIT:
        raise InputError(f"--oracle enumerates only up to n = {ENUMERATION_LIMIT}")
    value = count_parity_preserving(args.n)
    print(value)
    if args.oracle:
        enumerated = enumerate_parity_preserving(args.n)
        if enumerated != value:
            print(f"oracle mismatch: enumeration found {enumerated}", file=sys.stderr)
            return EXIT_INTERNAL
        print(f"oracle: {enumerated} (agrees)", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args) -> int:
    records = run_suite(args.sources, jobs=args.jobs, strict=args.strict, max_inputs=args.max_n)
    _emit(write_reports_csv([r.report for r in records if r.ok]), args.output)
    failed = [r for r in records if not r.ok]
    for r in failed:
        print(f"{r.source}: {r.error}", file=sys.stderr)
    return EXIT_INPUT if failed else EXIT_OK


def cmd_rdgen(args) -> int:
    t = _load(f"rd:{args.n}", args)
    _emit(write_pla(t), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict", action="store_true",
                        help="reject PLAs with uncovered minterms")
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_INPUTS, metavar="K",
                        help=f"cap on input variables (default {DEFAULT_MAX_INPUTS})")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="parityrev",
        description="Convert Boolean specifications to parity-preserving reversible ones.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="show parity profile and bound")
    p.add_argument("file", help="PLA file or rd:N")
    p.add_argument("--all", action="store_true", help="list every pattern")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("convert", parents=[common], help="write the converted PLA")
    p.add_argument("file", help="PLA file or rd:N")
    p.add_argument("-o", "--output", help="output PLA path (default stdout)")
    p.add_argument("--complete", action="store_true",
                   help="extend to a full permutation over all lines")
    p.add_argument("--report", metavar="PATH", help="write a conversion report")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true", help="report as CSV")
    fmt.add_argument("--kv", action="store_true", help="report as key=value lines (default)")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", parents=[common], help="check a square PLA")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="number of parity-preserving reversible functions")
    p.add_argument("n", type=int)
    p.add_argument("--oracle", action="store_true", help="cross-check by enumeration (n <= 3)")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bench", parents=[common], help="batch conversion to CSV")
    p.add_argument("sources", nargs="*", help="PLA files, directories, or rd:N specs")
    p.add_argument("-o", "--output", help="CSV path (default stdout)")
    p.add_argument("-j", "--jobs", type=int, default=1)
    p.add_argument("--csv", action="store_true", help="accepted for symmetry; output is CSV")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("rdgen", parents=[common], help="write the rd input-weight function")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_rdgen)
    return parser


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    with warnings.catch_warnings():
        warnings.simplefilter("always" if args.verbose else "default", PlaWarning)
        warnings.showwarning = _show_warning
        try:
            return args.func(args)
        except InputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
