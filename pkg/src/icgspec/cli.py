"""Command-line entry point: ``icgspec <command> ...``.

Exit codes: 0 success (conjecture holds), 1 counterexample found,
2 usage or budget error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import contextmanager

from . import checks
from .errors import BudgetExceeded, DomainError
from .icg import DivisorSet, spectrum
from .lemmas import classify
from .search import VerificationReport, summary_record, verify_order, verify_range
from .tables import TABLE_IDS, reproduce_table

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_divisor_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part.isdigit():
            raise UsageError(f"invalid divisor {part!r}: expected a plain positive integer")
        out.append(int(part))
    return out


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep or not lo.strip().isdigit() or not hi.strip().isdigit():
        raise UsageError(f"invalid range {text!r}: expected LO..HI")
    return int(lo), int(hi)


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def cmd_spectrum(args) -> int:
    try:
        D = DivisorSet.from_divisors(args.n, parse_divisor_list(args.d))
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    spec = spectrum(D)
    with _output(args.out) as fh:
        if args.format == "json":
            print(json.dumps({"n": args.n, "divisors": D.to_json(), "spectrum": spec.to_json()}), file=fh)
        else:
            print(spec, file=fh)
    return EXIT_OK


def _report_text(rep: VerificationReport) -> str:
    if rep.error == "budget":
        return f"n={rep.n}: refused, {rep.subset_count} subsets exceed the budget"
    line = f"n={rep.n}: {rep.distinct_spectra}/{rep.subset_count} distinct spectra, {'holds' if rep.holds else 'COUNTEREXAMPLE'} ({rep.elapsed_ms} ms)"
    for c in rep.collisions:
        line += f"\n  {c.first} and {c.second} share {c.spectrum}"
    if rep.filter_stats:
        line += "\n  excluded pairs: " + ", ".join(f"{k}={v}" for k, v in rep.filter_stats.items())
    return line


def _exit_for(reports) -> int:
    if any(r.collisions for r in reports):
        return EXIT_COUNTEREXAMPLE
    if any(r.error for r in reports):
        return EXIT_USAGE
    return EXIT_OK


def cmd_verify(args) -> int:
    if (args.n is None) == (args.range is None):
        raise UsageError("give either N or --range LO..HI")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    fmt = args.format
    if args.n is not None:
        try:
            rep = verify_order(args.n, collect_filter_stats=args.stats, shards=args.jobs, jobs=args.jobs)
        except BudgetExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except DomainError as exc:
            raise UsageError(str(exc)) from None
        if args.out:
            with open(args.out, "a") as fh:
                fh.write(rep.to_json() + "\n")
        print(rep.to_json() if fmt == "json" else _report_text(rep))
        return _exit_for([rep])

    lo, hi = parse_range(args.range)

    def emit(rep):
        print(rep.to_json() if fmt == "json" else _report_text(rep), flush=True)

    try:
        reports = verify_range(lo, hi, parallelism=args.jobs, out=args.out, collect_filter_stats=args.stats, on_report=emit)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    summary = summary_record(lo, hi, reports)
    if fmt == "json":
        print(json.dumps(summary, separators=(",", ":")))
    else:
        print(f"range {lo}..{hi}: {'all hold' if summary['all_hold'] else 'NOT all hold'}")
    return _exit_for(reports)


def cmd_classify(args) -> int:
    try:
        label = classify(args.n)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    with _output(args.out) as fh:
        if args.format == "json":
            print(json.dumps({"n": args.n, "label": label.label.value, "witness": label.witness}), file=fh)
        else:
            print(label, file=fh)
    return EXIT_OK


def cmd_tables(args) -> int:
    ids = TABLE_IDS if args.id == "all" else (args.id,)
    try:
        reports = [reproduce_table(t) for t in ids]
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    with _output(args.out) as fh:
        if args.format == "json":
            print(json.dumps([r.to_record() for r in reports]), file=fh)
        else:
            for r in reports:
                print(r.to_text(), file=fh)
            print(f"{sum(r.ok for r in reports)}/{len(reports)} PASS", file=fh)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_COUNTEREXAMPLE


def cmd_selfcheck(args) -> int:
    if args.nmax < 1:
        raise UsageError("--nmax must be at least 1")
    results = checks.run_all(args.nmax)
    with _output(args.out) as fh:
        if args.format == "json":
            print(json.dumps([{"check": r.name, "pass": r.ok, "detail": r.detail} for r in results]), file=fh)
        else:
            for r in results:
                print(r, file=fh)
    return EXIT_OK if all(r.ok for r in results) else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="icgspec", description="Spectra of integral circulant graphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="spectrum of ICG(n, D)")
    p.add_argument("n", type=int)
    p.add_argument("--d", nargs="?", const="", default="", help="comma-separated proper divisors")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", parents=[common], help="check that distinct divisor sets give distinct spectra")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--range", help="LO..HI")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--stats", action="store_true", help="count pairs excluded by each filter")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", parents=[common], help="which proven family n belongs to")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tables", parents=[common], help="reproduce the stored spectra tables")
    p.add_argument("--id", default="all")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("selfcheck", parents=[common], help="run the oracle and identity sweeps")
    p.add_argument("--nmax", type=int, default=120)
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
