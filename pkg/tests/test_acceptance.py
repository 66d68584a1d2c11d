"""Acceptance suite: one test per criterion, one status line each.

Heavier than the unit tests on purpose: differential sweeps, an exhaustive
reconciliation check, large synthetic inputs and timed comparisons. Status
lines print unbuffered (capsys.disabled) so they appear in the live run log.
"""

import itertools
import json
import re
import time

import numpy as np
import pytest

import kmerscan as ks
from kmerscan import cli
from kmerscan.ingest import Sequence

SEED = 20260823

BUILTIN_ROWS = [
    "agggtaaa | tttaccct",
    "(c|g|t)gggtaaa | tttaccc(a|c|g)",
    "a(a|c|t)ggtaaa | tttacc(a|g|t)t",
    "ag(a|c|t)gtaaa | tttac(a|g|t)ct",
    "agg(a|c|t)taaa | ttta(a|g|t)cct",
    "aggg(a|c|g)aaa | ttt(c|g|t)ccct",
    "agggt(c|g|t)aa | tt(a|c|g)accct",
    "agggta(c|g|t)a | t(a|c|g)taccct",
    "agggtaa(c|g|t) | (a|c|g)ttaccct",
]


def physical_cores():
    try:
        import psutil
        return psutil.cpu_count(logical=False) or 1
    except ImportError:
        import os
        return os.cpu_count() or 1


# criterion 1 -----------------------------------------------------------------

CONFIG_GRID = list(itertools.product((1, 2, 3, 7, 16), (0, 1, 4, 10)))
INPUT_POOL = np.frombuffer(b"acgtnACGTN", dtype=np.uint8)


def random_pattern_text(rng):
    """Random well-formed pattern file: 1-10 expressions, literals 1-12 long."""
    while True:
        lines = []
        for _ in range(int(rng.integers(1, 11))):
            branches = []
            for _ in range(int(rng.integers(1, 3))):
                length = int(rng.integers(1, 13))
                classes_left = 3  # keeps every branch product far below the cap
                atoms = []
                for _ in range(length):
                    if classes_left and rng.random() < 0.15:
                        classes_left -= 1
                        k = int(rng.integers(2, 5))
                        bases = [str(b) for b in rng.permutation(list("acgt"))[:k]]
                        atoms.append("(" + "|".join(bases) + ")")
                    else:
                        atoms.append("acgt"[int(rng.integers(4))])
                branches.append("".join(atoms))
            lines.append("|".join(branches))
        try:
            exprs = ks.parse_expressions("\n".join(lines))
        except ks.PatternSyntaxError:
            continue  # duplicate literal inside one expression: redraw
        return exprs


def test_criterion_1_four_way_oracle_equivalence(capsys):
    cases = 1000
    budget = 120.0
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    for i in range(cases):
        n = i if i < 3 else int(rng.integers(0, 5001))
        data = rng.choice(INPUT_POOL, size=n).tobytes()
        seq = Sequence(ks.encode_bytes(data), source_name=f"case-{i}")
        exprs = random_pattern_text(rng)
        table = ks.expand_to_literals(exprs)
        dfa = ks.build_dfa(table)
        workers, window = CONFIG_GRID[i % len(CONFIG_GRID)]

        naive_counts, naive_loc = ks.naive_count(table, seq)
        seq_counts = ks.sequential_count(dfa, seq)
        report = ks.run(dfa, seq, ks.EngineConfig(workers=workers, window=window,
                                                  mode="locate"))
        pat_counts = ks.pattern_parallel_count(exprs, seq, workers)

        context = f"case {i} (n={n}, workers={workers}, window={window})"
        assert (seq_counts == naive_counts).all(), context
        assert (report.per_expression_counts == naive_counts).all(), context
        assert (pat_counts == naive_counts).all(), context
        assert report.locations.tolist() == naive_loc.tolist(), context
    elapsed = time.perf_counter() - t0
    with capsys.disabled():
        print(f"\n[criterion 1] PASS four-way equivalence on {cases} cases "
              f"in {elapsed:.1f}s (budget {budget:.0f}s)")
    assert elapsed < budget


# criterion 2 -----------------------------------------------------------------

def independent_expand(row):
    """Literal expansion that shares nothing with the package parser."""
    out = []
    for branch in row.split(" | "):
        parts = re.findall(r"\(([acgt|]+)\)|([acgt])", branch)
        choices = [grp.split("|") if grp else [single] for grp, single in parts]
        out.extend("".join(c) for c in itertools.product(*choices))
    return out


def test_criterion_2_builtin_set_fidelity(builtin_exprs, builtin_table,
                                          builtin_dfa, capsys):
    assert [e.source for e in builtin_exprs.expressions] == BUILTIN_ROWS

    by_expr = {}
    for lit, eid in builtin_table.literals:
        by_expr.setdefault(eid, []).append(lit)
    assert len(builtin_table) == 50
    assert [len(by_expr[i]) for i in range(9)] == [2] + [6] * 8
    assert all(len(lit) == 8 for lit, _ in builtin_table.literals)
    for i, row in enumerate(BUILTIN_ROWS):
        assert sorted(by_expr[i]) == sorted(independent_expand(row))

    # totality: every state x symbol pair has an in-range target
    t = builtin_dfa.transitions
    assert t.shape == (builtin_dfa.state_count, 5)
    assert (t >= 0).all() and (t < builtin_dfa.state_count).all()

    # state count oracle: root plus every distinct literal prefix
    prefixes = {lit[:k] for lit, _ in builtin_table.literals
                for k in range(1, 9)}
    assert builtin_dfa.state_count == 1 + len(prefixes) == 227

    minimized = ks.minimize(builtin_dfa).state_count
    with capsys.disabled():
        print(f"\n[criterion 2] PASS builtin set: 50 literals, raw DFA states=227, "
              f"minimized={minimized} "
              f"(reference value {ks.BUILTIN_DFA_REFERENCE_STATES}, informational, "
              f"not asserted)")


# criterion 3 -----------------------------------------------------------------

def test_criterion_3_convergence_rate(builtin_dfa, capsys):
    seq = ks.synthetic_sequence(16 * 1024 * 1024, seed=SEED)
    report = ks.run(builtin_dfa, seq, ks.EngineConfig(workers=8, window=10))
    m = report.metadata
    rate = m["converged_runs"] / m["speculative_runs"]
    with capsys.disabled():
        print(f"\n[criterion 3] {'PASS' if rate >= 0.99 else 'FAIL'} "
              f"convergence on 16MB/8 workers: {m['converged_runs']}"
              f"/{m['speculative_runs']} = {rate:.4f} (need >= 0.99)")
        print(f"[criterion 3] convergence-step histogram: {m['convergence_steps']}")
    assert rate >= 0.99


# criterion 4 -----------------------------------------------------------------

def test_criterion_4_exhaustive_reconciliation(toy_dfa, capsys):
    total_runs = 0
    total_converged = 0
    for length in range(1, 13):
        r = ks.exhaustive_reconciliation_check(toy_dfa, length, window=10)
        assert r["count_mismatches"] == 0, f"length {length}"
        assert r["final_state_mismatches"] == 0, f"length {length}"
        total_runs += r["speculative_runs"]
        total_converged += r["converged_runs"]
    with capsys.disabled():
        print(f"\n[criterion 4] PASS exhaustive reconciliation, chunk lengths 1-12: "
              f"{total_converged} converged of {total_runs} speculative runs, "
              f"0 mismatches")


# criteria 5 and 6 ------------------------------------------------------------

@pytest.fixture(scope="module")
def big_sequence():
    return ks.synthetic_sequence(64 * 1024 * 1024, seed=SEED)


def test_criterion_5_input_partition_scaling(builtin_dfa, big_sequence, capsys):
    scenarios = [ks.input_scan_scenario(builtin_dfa, big_sequence, w, 10, group="c5")
                 for w in (1, 2, 4, 8)]
    results = {r.workers: r for r in ks.bench(scenarios, repetitions=5)}
    ratio = results[4].median_seconds / results[1].median_seconds
    cores = physical_cores()
    with capsys.disabled():
        print(f"\n[criterion 5] medians on 64MB: " +
              ", ".join(f"w{w}={results[w].median_seconds:.3f}s"
                        for w in (1, 2, 4, 8)))
        print(f"[criterion 5] w4/w1 ratio = {ratio:.2f} (need <= 0.60 on >= 4 "
              f"physical cores; this machine has {cores})")
    if cores < 4:
        pytest.skip(f"speedup assertion needs >= 4 physical cores, found {cores}; "
                    f"medians reported above")
    assert ratio <= 0.6


def test_criterion_6_partitioning_comparison(builtin_exprs, builtin_dfa,
                                             big_sequence, capsys):
    scenarios = [
        ks.input_scan_scenario(builtin_dfa, big_sequence, 9, 10, group="c6"),
        ks.pattern_scan_scenario(builtin_exprs, big_sequence, 9, group="c6"),
    ]
    input_r, pattern_r = ks.bench(scenarios, repetitions=5)
    with capsys.disabled():
        print(f"\n[criterion 6] 9 workers on 64MB: input-based {input_r.median_seconds:.3f}s "
              f"vs pattern-based {pattern_r.median_seconds:.3f}s; "
              f"checksums {input_r.checksum}/{pattern_r.checksum}")
    assert input_r.checksum == pattern_r.checksum  # also enforced by the group
    assert input_r.median_seconds <= pattern_r.median_seconds


# criterion 7 -----------------------------------------------------------------

def fasta_fixture_file(tmp_path):
    rng = np.random.default_rng(SEED + 7)
    body = rng.choice(INPUT_POOL, size=200_000).tobytes().decode()
    wrapped = "\n".join(body[i:i + 70] for i in range(0, len(body), 70))
    path = tmp_path / "determinism.fa"
    path.write_text(f">sample A\n{wrapped[:len(wrapped) // 2]}\n>sample B\n"
                    f"{wrapped[len(wrapped) // 2:]}\n")
    return str(path)


def run_twice(capsys, argv):
    code1 = cli.main(argv)
    first = capsys.readouterr().out
    code2 = cli.main(argv)
    second = capsys.readouterr().out
    assert code1 == 0 and code2 == 0, argv
    return first, second


def strip_bench_timings(doc):
    doc = json.loads(doc)
    for r in doc["results"]:
        for key in ("seconds", "median_seconds", "min_seconds"):
            del r[key]
    return doc


def test_criterion_7_cli_determinism(tmp_path, capsys):
    fasta = fasta_fixture_file(tmp_path)
    checked = 0
    for workers in ("1", "8"):
        for sub in ("count", "locate"):
            for fmt in ("tsv", "json"):
                argv = [sub, "--builtin-patterns", "--input", fasta,
                        "--workers", workers, "--output-format", fmt]
                first, second = run_twice(capsys, argv)
                assert first == second, argv
                assert first, argv
                checked += 1
    for extra in ([], ["--minimized"]):
        first, second = run_twice(capsys, ["dump-dfa", "--builtin-patterns"] + extra)
        assert first == second
        checked += 1
    bench_argv = ["bench", "--builtin-patterns", "--synthetic-size", "256K",
                  "--workers", "1,8", "--repeat", "2", "--output-format", "json"]
    first, second = run_twice(capsys, bench_argv)
    assert strip_bench_timings(first) == strip_bench_timings(second)
    checked += 1
    with capsys.disabled():
        print(f"\n[criterion 7] PASS byte-identical output for {checked} "
              f"invocation pairs across count/locate/bench/dump-dfa, "
              f"workers 1 and 8 (bench timings excluded)")
