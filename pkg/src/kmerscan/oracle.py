"""Independent correctness oracles.

naive_count deliberately shares nothing with the automaton path: it compares
literals position by position against the symbol array. sequential_count is
the single-pass automaton baseline (the 1-worker reference and the timing
denominator). pattern_parallel_count is the alternative parallelization that
partitions the *expressions* instead of the input, for A/B comparisons.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ._kernels import reconciliation_sweep, scan_from
from .alphabet import BASE_CODES, N_SYMBOLS
from .automaton import Dfa, build_dfa
from .engine import possible_starting_states
from .ingest import Sequence
from .patterns import ExpressionSet, LiteralTable, expand_to_literals


def naive_count(table: LiteralTable, seq: Sequence) -> tuple[np.ndarray, np.ndarray]:
    """Brute-force occurrence counting straight off the literal table.

    For every literal, every start position is checked symbol by symbol
    (vectorized over positions); overlapping occurrences all count, OTHER
    matches nothing. Returns (per-expression counts, location rows sorted by
    end offset then expression id).
    """
    sym = seq.symbols
    n = seq.length
    counts = np.zeros(table.n_expressions, dtype=np.int64)
    parts: list[np.ndarray] = []
    for literal, expr_id in table.literals:
        codes = np.array([BASE_CODES[c] for c in literal], dtype=np.uint8)
        length = codes.shape[0]
        if length > n:
            continue
        hit = np.ones(n - length + 1, dtype=bool)
        for j, c in enumerate(codes):
            hit &= sym[j:n - length + 1 + j] == c
        positions = np.nonzero(hit)[0]
        counts[expr_id] += positions.shape[0]
        if positions.shape[0]:
            rows = np.empty((positions.shape[0], 2), dtype=np.int64)
            rows[:, 0] = positions + length
            rows[:, 1] = expr_id
            parts.append(rows)
    locations = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    locations = locations[np.lexsort((locations[:, 1], locations[:, 0]))]
    return counts, locations


def sequential_count(dfa: Dfa, seq: Sequence) -> np.ndarray:
    """One left-to-right automaton pass from the start state."""
    counts = np.zeros(dfa.n_expressions, dtype=np.int64)
    scan_from(dfa.transitions, dfa.out_offsets, dfa.out_ids,
              seq.symbols, 0, seq.length, dfa.start, counts)
    return counts


def pattern_parallel_count(exprs: ExpressionSet, seq: Sequence, workers: int) -> np.ndarray:
    """Partition expressions round-robin, one private automaton per worker.

    Every worker scans the *full* sequence with its own machine; counts keep
    their global expression ids, so summing the workers' arrays concatenates
    the partition.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    table = expand_to_literals(exprs)
    n_expr = table.n_expressions
    groups: list[list[tuple[str, int]]] = [[] for _ in range(workers)]
    for literal, expr_id in table.literals:
        groups[expr_id % workers].append((literal, expr_id))
    machines = [build_dfa(LiteralTable(tuple(g), n_expr)) for g in groups if g]

    def scan(dfa: Dfa) -> np.ndarray:
        return sequential_count(dfa, seq)

    if len(machines) == 1:
        partials = [scan(machines[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(machines)) as pool:
            partials = list(pool.map(scan, machines))
    total = np.zeros(n_expr, dtype=np.int64)
    for p in partials:
        total += p
    return total


def exhaustive_reconciliation_check(dfa: Dfa, length: int, window: int) -> dict:
    """Verify the convergence reconciliation on every word of one length.

    Enumerates all 4**length base words; for each border symbol (including
    OTHER, whose candidate set collapses to the start state) the production
    chunk kernel runs with that border's start-state set, and every converged
    speculative run is checked against a full scan from its own start state.
    """
    pss_sets = [possible_starting_states(dfa, border, 0) for border in range(N_SYMBOLS)]
    pss_off = np.zeros(N_SYMBOLS + 1, dtype=np.int64)
    np.cumsum([p.shape[0] for p in pss_sets], out=pss_off[1:])
    pss_data = np.concatenate(pss_sets)
    speculative_runs, converged, bad_counts, bad_state = reconciliation_sweep(
        dfa.transitions, dfa.out_offsets, dfa.out_ids, dfa.n_expressions,
        pss_data, pss_off, length, window,
    )
    return {
        "length": length,
        "speculative_runs": int(speculative_runs),
        "converged_runs": int(converged),
        "count_mismatches": int(bad_counts),
        "final_state_mismatches": int(bad_state),
    }
