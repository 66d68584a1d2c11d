"""Benchmark harness: repeated wall-clock scenarios with correctness guards.

Every scenario returns per-expression counts; the harness hashes them and
refuses to report timings if any repetition, or any scenario in the same
comparison group, disagrees. Median is the headline statistic (robust to
scheduler noise); all raw repetition times are kept.
"""

from __future__ import annotations

import hashlib
import statistics
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .alphabet import OTHER
from .automaton import Dfa
from .engine import EngineConfig, run
from .ingest import Sequence
from .oracle import pattern_parallel_count
from .patterns import ExpressionSet

DEFAULT_REPETITIONS = 20


class BenchChecksumError(RuntimeError):
    """Counts diverged between repetitions or between paired scenarios."""


@dataclass(frozen=True)
class Scenario:
    """One timed configuration. Scenarios sharing `group` must agree on counts."""

    name: str
    workers: int
    fn: Callable[[], np.ndarray]
    group: str = ""


@dataclass(frozen=True)
class BenchResult:
    scenario: str
    workers: int
    repetitions: int
    seconds: tuple[float, ...]
    median_seconds: float
    min_seconds: float
    checksum: str


def counts_checksum(counts: np.ndarray) -> str:
    payload = ",".join(str(int(c)) for c in counts)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def synthetic_sequence(length: int, seed: int = 42, other_rate: float = 0.0) -> Sequence:
    """Deterministic uniform acgt draw, with an optional OTHER admixture."""
    rng = np.random.default_rng(seed)
    sym = rng.integers(0, 4, size=length, dtype=np.uint8)
    if other_rate > 0.0:
        sym[rng.random(length) < other_rate] = OTHER
    return Sequence(sym, source_name=f"synthetic(seed={seed},n={length},other={other_rate})")


def bench(scenarios: list[Scenario], repetitions: int = DEFAULT_REPETITIONS) -> list[BenchResult]:
    """Time every scenario `repetitions` times after one untimed warmup run.

    Raises BenchChecksumError on any counts divergence before reporting a
    single number: timings for wrong answers are worthless.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    results: list[BenchResult] = []
    group_checksums: dict[str, tuple[str, str]] = {}
    for sc in scenarios:
        checksum = counts_checksum(sc.fn())  # warmup, also pins the expected answer
        seconds = []
        for rep in range(repetitions):
            t0 = time.perf_counter()
            counts = sc.fn()
            seconds.append(time.perf_counter() - t0)
            got = counts_checksum(counts)
            if got != checksum:
                raise BenchChecksumError(
                    f"{sc.name}: repetition {rep} checksum {got} != {checksum}"
                )
        if sc.group:
            prior = group_checksums.setdefault(sc.group, (sc.name, checksum))
            if prior[1] != checksum:
                raise BenchChecksumError(
                    f"group {sc.group!r}: {sc.name} checksum {checksum} "
                    f"!= {prior[0]} checksum {prior[1]}"
                )
        results.append(BenchResult(
            scenario=sc.name,
            workers=sc.workers,
            repetitions=repetitions,
            seconds=tuple(seconds),
            median_seconds=statistics.median(seconds),
            min_seconds=min(seconds),
            checksum=checksum,
        ))
    return results


def input_scan_scenario(dfa: Dfa, seq: Sequence, workers: int, window: int,
                        group: str = "") -> Scenario:
    cfg = EngineConfig(workers=workers, window=window)
    return Scenario(
        name=f"input-based/w{workers}",
        workers=workers,
        fn=lambda: run(dfa, seq, cfg).per_expression_counts,
        group=group,
    )


def pattern_scan_scenario(exprs: ExpressionSet, seq: Sequence, workers: int,
                          group: str = "") -> Scenario:
    return Scenario(
        name=f"pattern-based/w{workers}",
        workers=workers,
        fn=lambda: pattern_parallel_count(exprs, seq, workers),
        group=group,
    )
