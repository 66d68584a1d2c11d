"""Parallel chunked scanning with speculative start states.

The sequence is cut into per-worker chunks. Chunk 0 starts from the automaton
start state; every later chunk starts from an unknown state, so its worker
runs one full scan from the first candidate state plus short speculative runs
from the remaining candidates. A speculative run stops at the first position
where its state equals the full run's recorded state (they coincide forever
after, because the transition function is a function); its counts are then
reconciled from the full run's totals. Reduction chains chunks by matching
each chunk's start state to the previous chunk's final state.

Workers share the automaton, sequence and plan read-only and write results
into per-chunk slots; the output is deterministic for fixed inputs regardless
of scheduling.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._kernels import match_chunk_kernel
from .alphabet import N_SYMBOLS
from .automaton import START, Dfa
from .ingest import ChunkPlan, Sequence, plan_chunks

DEFAULT_WINDOW = 10


class ReductionChainError(RuntimeError):
    """Internal invariant failure: no chunk result continues the state chain."""


@dataclass(frozen=True)
class EngineConfig:
    workers: int = 1
    window: int = DEFAULT_WINDOW
    mode: str = "count"  # "count" or "locate"

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.window < 0:
            raise ValueError("window must be >= 0")
        if self.mode not in ("count", "locate"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class ChunkResult:
    """Outcome of one run over one chunk.

    converged_at is the position where a speculative run met the full run
    (None for the full run and for runs that scanned the whole chunk); a
    converged run carries reconciled counts and the full run's final state.
    locations (locate mode) hold [end offset, expression id] rows: the whole
    chunk for full/non-converged runs, positions up to and including
    converged_at for converged ones.
    """

    init_state: int
    last_state: int
    counts: np.ndarray
    converged_at: int | None = None
    locations: np.ndarray | None = None


@dataclass(frozen=True)
class MatchReport:
    per_expression_counts: np.ndarray
    total_count: int
    locations: np.ndarray | None
    metadata: dict = field(default_factory=dict)


def possible_starting_states(dfa: Dfa, prev_last: int, first: int) -> np.ndarray:
    """Candidate start states for a chunk whose predecessor ends in prev_last.

    The candidates are the destination image of prev_last over all states,
    intersected with the states that can read `first`; the table is total, so
    that filter keeps everything and the image alone remains. Sorted
    ascending, deduplicated. prev_last = OTHER collapses to [start].
    """
    for sym in (prev_last, first):
        if not 0 <= sym < N_SYMBOLS:
            raise ValueError(f"symbol {sym} out of range")
    return np.unique(dfa.transitions[:, prev_last]).astype(np.int64)


def match_chunk(dfa: Dfa, chunk: np.ndarray, global_offset: int,
                pss, cfg: EngineConfig) -> list[ChunkResult]:
    """Scan one chunk from every candidate start state.

    Returns one ChunkResult per pss entry, in pss order; pss[0] is the full
    run. Speculative runs that miss the convergence window fall through to a
    complete scan of the chunk.
    """
    pss = np.ascontiguousarray(np.asarray(pss, dtype=np.int64))
    if pss.size == 0:
        raise ValueError("pss must be non-empty")
    nr = pss.shape[0]
    ne = dfa.n_expressions
    m = int(chunk.shape[0])
    locate = cfg.mode == "locate"

    counts = np.empty((nr, ne), dtype=np.int64)
    last = np.empty(nr, dtype=np.int64)
    conv = np.empty(nr, dtype=np.int64)
    weff = min(cfg.window, m)
    fr_states = np.empty(weff, dtype=np.int64)
    fr_counts = np.empty((weff, ne), dtype=np.int64)
    loc_off = np.empty(nr + 1, dtype=np.int64)
    loc_in = np.empty((64 if locate else 0, 2), dtype=np.int64)

    loc = match_chunk_kernel(
        dfa.transitions, dfa.out_offsets, dfa.out_ids,
        chunk, 0, m, global_offset, pss, cfg.window, locate,
        counts, last, conv, fr_states, fr_counts, loc_off, loc_in,
    )

    results = []
    for i in range(nr):
        results.append(ChunkResult(
            init_state=int(pss[i]),
            last_state=int(last[i]),
            counts=counts[i],
            converged_at=None if conv[i] < 0 else int(conv[i]),
            locations=loc[loc_off[i]:loc_off[i + 1]] if locate else None,
        ))
    return results


def reduce(dfa: Dfa, plan: ChunkPlan, per_chunk: list[list[ChunkResult]],
           cfg: EngineConfig) -> MatchReport:
    """Chain per-chunk results into one report.

    selected[0] is chunk 0's start-state run; selected[i] is the chunk-i run
    whose start state equals selected[i-1]'s final state. Counts are summed
    over the selected chain. In locate mode a converged selected run
    contributes its own prefix rows plus the full run's rows past the
    convergence point.
    """
    if len(per_chunk) != plan.worker_count:
        raise ValueError("per_chunk does not match the plan")
    ne = dfa.n_expressions
    locate = cfg.mode == "locate"

    counts = np.zeros(ne, dtype=np.int64)
    loc_parts: list[np.ndarray] = []
    selected: list[ChunkResult] = []
    for i, results in enumerate(per_chunk):
        want = START if i == 0 else selected[i - 1].last_state
        sel = next((r for r in results if r.init_state == want), None)
        if sel is None:
            raise ReductionChainError(
                f"chunk {i}: no run starting from state {want} "
                f"(have {[r.init_state for r in results]})"
            )
        selected.append(sel)
        counts += sel.counts
        if locate:
            loc_parts.append(sel.locations)
            if sel.converged_at is not None:
                r0 = results[0]
                border = plan.bounds[i][0] + sel.converged_at + 1
                loc_parts.append(r0.locations[r0.locations[:, 0] > border])

    locations = None
    if locate:
        locations = (np.concatenate(loc_parts) if loc_parts
                     else np.empty((0, 2), dtype=np.int64))
        locations = locations[np.lexsort((locations[:, 1], locations[:, 0]))]

    total = int(counts.sum())
    assert locations is None or locations.shape[0] == total

    steps: Counter = Counter()
    unconverged = 0
    speculative = 0
    for results in per_chunk:
        for r in results[1:]:
            speculative += 1
            if r.converged_at is None:
                unconverged += 1
            else:
                steps[r.converged_at] += 1

    metadata = {
        "input_length": plan.bounds[-1][1],
        "workers": cfg.workers,
        "effective_workers": plan.worker_count,
        "window": cfg.window,
        "mode": cfg.mode,
        "pss_sizes": [len(results) for results in per_chunk],
        "speculative_runs": speculative,
        "converged_runs": speculative - unconverged,
        "unconverged_runs": unconverged,
        "convergence_steps": dict(sorted(steps.items())),
    }
    return MatchReport(counts, total, locations, metadata)


def run(dfa: Dfa, seq: Sequence, cfg: EngineConfig = EngineConfig()) -> MatchReport:
    """Plan chunks, scan them concurrently, and reduce to a single report."""
    t0 = time.perf_counter()
    plan = plan_chunks(seq, cfg.workers)

    pss_per_chunk = [np.array([START], dtype=np.int64)]
    for i in range(1, plan.worker_count):
        prev_last, first = plan.boundary_symbols[i]
        pss_per_chunk.append(possible_starting_states(dfa, prev_last, first))

    sym = seq.symbols

    def scan(i: int) -> list[ChunkResult]:
        lo, hi = plan.bounds[i]
        return match_chunk(dfa, sym[lo:hi], lo, pss_per_chunk[i], cfg)

    if plan.worker_count == 1:
        per_chunk = [scan(0)]
    else:
        per_chunk: list = [None] * plan.worker_count

        def work(i: int) -> None:
            per_chunk[i] = scan(i)

        with ThreadPoolExecutor(max_workers=plan.worker_count) as pool:
            list(pool.map(work, range(plan.worker_count)))

    report = reduce(dfa, plan, per_chunk, cfg)
    report.metadata["input_name"] = seq.source_name
    report.metadata["elapsed_seconds"] = time.perf_counter() - t0
    return report
