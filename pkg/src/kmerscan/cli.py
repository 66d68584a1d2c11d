"""Command-line entry point.

Subcommands:
  count     per-expression match counts over a file
  locate    counts plus every (end offset, expression) match pair
  bench     repeated timed scans with checksum-guarded results
  dump-dfa  automaton transition table and state-count summary

Exit codes: 0 success, 1 runtime failure (file, parse, checksum), 2 usage.
Timings never appear in count/locate output, so identical invocations are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automaton import build_dfa, dump_dfa, minimize
from .bench import (
    DEFAULT_REPETITIONS,
    BenchChecksumError,
    BenchResult,
    bench,
    input_scan_scenario,
    pattern_scan_scenario,
    synthetic_sequence,
)
from .engine import DEFAULT_WINDOW, EngineConfig, MatchReport, ReductionChainError, run
from .ingest import Sequence, detect_format, load_sequence
from .patterns import (
    BUILTIN_DFA_REFERENCE_STATES,
    ExpansionLimitError,
    ExpressionSet,
    PatternSyntaxError,
    builtin_expression_set,
    expand_to_literals,
    parse_expressions,
)

SIZE_SUFFIXES = {"k": 1024, "m": 1024 ** 2, "g": 1024 ** 3}


def parse_size(text: str) -> int:
    """Parse a byte count with an optional K/M/G suffix (binary multiples)."""
    t = text.strip().lower()
    scale = 1
    if t and t[-1] in SIZE_SUFFIXES:
        scale = SIZE_SUFFIXES[t[-1]]
        t = t[:-1]
    try:
        value = int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid size: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"size must be >= 0: {text!r}")
    return value * scale


def parse_worker_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid worker list: {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"invalid worker list: {text!r}")
    return values


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _add_pattern_args(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--patterns", metavar="FILE",
                       help="expression file, one pattern per line")
    group.add_argument("--builtin-patterns", action="store_true",
                       help="use the built-in regex-dna expression set")


def _add_scan_args(sub: argparse.ArgumentParser) -> None:
    _add_pattern_args(sub)
    sub.add_argument("--input", required=True, metavar="FILE")
    sub.add_argument("--format", choices=("auto", "raw", "fasta"), default="auto")
    sub.add_argument("--workers", type=_positive_int, default=1)
    sub.add_argument("--window", type=_nonnegative_int, default=DEFAULT_WINDOW)
    sub.add_argument("--output-format", choices=("tsv", "json"), default="tsv")


def _load_expressions(args: argparse.Namespace) -> ExpressionSet:
    if args.builtin_patterns:
        return builtin_expression_set()
    return parse_expressions(Path(args.patterns).read_text())


def _load_input(args: argparse.Namespace) -> Sequence:
    fmt = args.format if args.format != "auto" else detect_format(args.input)
    return load_sequence(args.input, fmt)


def _json_scan_report(exprs: ExpressionSet, report: MatchReport, mode: str) -> dict:
    meta = {k: v for k, v in report.metadata.items() if k != "elapsed_seconds"}
    doc = {
        "expressions": [
            {
                "id": e.id,
                "source": e.source,
                "count": int(report.per_expression_counts[e.id]),
            }
            for e in exprs.expressions
        ],
        "total": int(report.total_count),
        "metadata": meta,
    }
    if mode == "locate":
        doc["locations"] = [
            {"offset": int(off), "expression": int(eid)}
            for off, eid in report.locations
        ]
    return doc


def _emit_scan_report(args: argparse.Namespace, exprs: ExpressionSet,
                      report: MatchReport, mode: str) -> None:
    if args.output_format == "json":
        print(json.dumps(_json_scan_report(exprs, report, mode),
                         indent=2, sort_keys=True))
        return
    lines = ["expression_index\texpression_source\tcount"]
    for e in exprs.expressions:
        lines.append(f"{e.id}\t{e.source}\t{int(report.per_expression_counts[e.id])}")
    lines.append(f"TOTAL\t\t{int(report.total_count)}")
    if mode == "locate":
        lines.append("")
        lines.append("offset\texpression_index")
        for off, eid in report.locations:
            lines.append(f"{int(off)}\t{int(eid)}")
    print("\n".join(lines))


def _run_scan(args: argparse.Namespace, mode: str) -> int:
    exprs = _load_expressions(args)
    dfa = build_dfa(expand_to_literals(exprs))
    seq = _load_input(args)
    cfg = EngineConfig(workers=args.workers, window=args.window, mode=mode)
    report = run(dfa, seq, cfg)
    _emit_scan_report(args, exprs, report, mode)
    return 0


def _cmd_count(args: argparse.Namespace) -> int:
    return _run_scan(args, "count")


def _cmd_locate(args: argparse.Namespace) -> int:
    return _run_scan(args, "locate")


def _emit_bench(args: argparse.Namespace, seq: Sequence,
                results: list[BenchResult]) -> None:
    if args.output_format == "json":
        doc = {
            "input": seq.source_name,
            "input_length": seq.length,
            "repetitions": args.repeat,
            "results": [
                {
                    "scenario": r.scenario,
                    "workers": r.workers,
                    "checksum": r.checksum,
                    "seconds": list(r.seconds),
                    "median_seconds": r.median_seconds,
                    "min_seconds": r.min_seconds,
                }
                for r in results
            ],
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
        return
    lines = [f"# input\t{seq.source_name}\tlength={seq.length}"]
    for r in results:
        lines.append(f"# checksum\t{r.scenario}\t{r.checksum}")
    lines.append("scenario\tworkers\trepetition\tseconds")
    for r in results:
        for i, s in enumerate(r.seconds):
            lines.append(f"{r.scenario}\t{r.workers}\t{i}\t{s:.6f}")
    for r in results:
        lines.append(f"# median\t{r.scenario}\t{r.median_seconds:.6f}")
    print("\n".join(lines))


def _cmd_bench(args: argparse.Namespace) -> int:
    exprs = _load_expressions(args)
    dfa = build_dfa(expand_to_literals(exprs))
    if args.synthetic_size is not None:
        seq = synthetic_sequence(args.synthetic_size, seed=args.seed,
                                 other_rate=args.other_rate)
    else:
        seq = _load_input(args)
    scenarios = [input_scan_scenario(dfa, seq, w, args.window, group="bench")
                 for w in args.workers]
    if args.pattern_based:
        scenarios += [pattern_scan_scenario(exprs, seq, w, group="bench")
                      for w in args.workers]
    results = bench(scenarios, repetitions=args.repeat)
    _emit_bench(args, seq, results)
    return 0


def _cmd_dump_dfa(args: argparse.Namespace) -> int:
    exprs = _load_expressions(args)
    table = expand_to_literals(exprs)
    dfa = build_dfa(table)
    mini = minimize(dfa)
    lines = [
        f"# expressions\t{len(exprs)}",
        f"# literals\t{len(table)}",
        f"# dfa_states\t{dfa.state_count}",
        f"# dfa_states_minimized\t{mini.state_count}",
    ]
    if args.builtin_patterns:
        lines.append(f"# reference_states\t{BUILTIN_DFA_REFERENCE_STATES}")
    sys.stdout.write("\n".join(lines) + "\n")
    sys.stdout.write(dump_dfa(mini if args.minimized else dfa))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmerscan",
        description="Count and locate DNA k-mer motifs with a parallel DFA scan.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    p_count = sub.add_parser("count", help="per-expression match counts")
    _add_scan_args(p_count)
    p_count.set_defaults(handler=_cmd_count)

    p_locate = sub.add_parser(
        "locate", help="counts plus sorted (offset, expression) match pairs")
    _add_scan_args(p_locate)
    p_locate.set_defaults(handler=_cmd_locate)

    p_bench = sub.add_parser("bench", help="timed repetitions with checksum guards")
    _add_pattern_args(p_bench)
    src = p_bench.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE")
    src.add_argument("--synthetic-size", type=parse_size, metavar="SIZE",
                     help="synthetic input length, optional K/M/G suffix")
    p_bench.add_argument("--format", choices=("auto", "raw", "fasta"), default="auto")
    p_bench.add_argument("--seed", type=int, default=42)
    p_bench.add_argument("--other-rate", type=float, default=0.0)
    p_bench.add_argument("--repeat", type=_positive_int, default=DEFAULT_REPETITIONS)
    p_bench.add_argument("--workers", type=parse_worker_list, default=[1, 2, 4, 8],
                         metavar="LIST", help="comma-separated worker counts")
    p_bench.add_argument("--window", type=_nonnegative_int, default=DEFAULT_WINDOW)
    p_bench.add_argument("--pattern-based", action="store_true",
                         help="add pattern-partitioned scenarios for comparison")
    p_bench.add_argument("--output-format", choices=("tsv", "json"), default="tsv")
    p_bench.set_defaults(handler=_cmd_bench)

    p_dump = sub.add_parser("dump-dfa", help="automaton table and state counts")
    _add_pattern_args(p_dump)
    p_dump.add_argument("--minimized", action="store_true",
                        help="emit the minimized automaton table")
    p_dump.set_defaults(handler=_cmd_dump_dfa)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (PatternSyntaxError, ExpansionLimitError, BenchChecksumError,
            ReductionChainError, OSError, ValueError) as exc:
        print(f"kmerscan: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
