"""kmerscan: count and locate k-mer motifs with a speculative parallel DFA scan.

A restricted regex dialect (literals plus single-base alternation classes) is
expanded to literal k-mers, compiled into a dense failure-free Aho-Corasick
automaton, and matched over input chunks in parallel. Workers other than the
first start from a small set of speculative states and usually converge onto
the authoritative run within a few symbols, after which their counts are
reconciled by subtraction instead of a rescan.
"""

from .alphabet import BASES, CODE_CHARS, N_SYMBOLS, OTHER, decode, encode, encode_bytes
from .automaton import Dfa, build_dfa, dump_dfa, minimize, outputs_at, step
from .bench import (
    BenchChecksumError,
    BenchResult,
    Scenario,
    bench,
    counts_checksum,
    input_scan_scenario,
    pattern_scan_scenario,
    synthetic_sequence,
)
from .engine import (
    DEFAULT_WINDOW,
    ChunkResult,
    EngineConfig,
    MatchReport,
    ReductionChainError,
    match_chunk,
    possible_starting_states,
    reduce,
    run,
)
from .ingest import ChunkPlan, Sequence, detect_format, load_sequence, plan_chunks, sequence_from_text
from .oracle import (
    exhaustive_reconciliation_check,
    naive_count,
    pattern_parallel_count,
    sequential_count,
)
from .patterns import (
    BUILTIN_DFA_REFERENCE_STATES,
    BUILTIN_PATTERN_TEXT,
    Branch,
    Expression,
    ExpressionSet,
    ExpansionLimitError,
    LiteralTable,
    PatternSyntaxError,
    builtin_expression_set,
    expand_to_literals,
    parse_expressions,
    render_expression_set,
)

__version__ = "0.1.0"

__all__ = [
    "BASES",
    "BUILTIN_DFA_REFERENCE_STATES",
    "BUILTIN_PATTERN_TEXT",
    "BenchChecksumError",
    "BenchResult",
    "Branch",
    "CODE_CHARS",
    "ChunkPlan",
    "ChunkResult",
    "DEFAULT_WINDOW",
    "Dfa",
    "EngineConfig",
    "ExpansionLimitError",
    "Expression",
    "ExpressionSet",
    "LiteralTable",
    "MatchReport",
    "N_SYMBOLS",
    "OTHER",
    "PatternSyntaxError",
    "ReductionChainError",
    "Scenario",
    "Sequence",
    "bench",
    "build_dfa",
    "builtin_expression_set",
    "counts_checksum",
    "decode",
    "detect_format",
    "dump_dfa",
    "encode",
    "encode_bytes",
    "exhaustive_reconciliation_check",
    "expand_to_literals",
    "input_scan_scenario",
    "load_sequence",
    "match_chunk",
    "minimize",
    "naive_count",
    "outputs_at",
    "parse_expressions",
    "pattern_parallel_count",
    "pattern_scan_scenario",
    "plan_chunks",
    "possible_starting_states",
    "reduce",
    "render_expression_set",
    "run",
    "sequence_from_text",
    "sequential_count",
    "step",
    "synthetic_sequence",
]
