"""
Benchmarking the two parallelization strategies
===============================================

Input-based partitioning splits the sequence across workers; pattern-based
partitioning gives every worker a subset of the expressions and the whole
sequence. The harness times both on the same input and refuses to report
anything if their counts disagree.

Run on a single-core machine the input-based numbers will not improve with
workers; the interesting part is that the checksums always match.
"""

from kmerscan import (
    bench,
    build_dfa,
    builtin_expression_set,
    expand_to_literals,
    input_scan_scenario,
    pattern_scan_scenario,
    synthetic_sequence,
)

exprs = builtin_expression_set()
dfa = build_dfa(expand_to_literals(exprs))
seq = synthetic_sequence(8 * 1024 * 1024, seed=42)

scenarios = []
for workers in (1, 2, 4):
    scenarios.append(input_scan_scenario(dfa, seq, workers, window=10, group="demo"))
scenarios.append(pattern_scan_scenario(exprs, seq, workers=4, group="demo"))

results = bench(scenarios, repetitions=5)

print(f"input: {seq.source_name}")
print(f"{'scenario':<20} {'median_s':>9} {'min_s':>9}  checksum")
for r in results:
    print(f"{r.scenario:<20} {r.median_seconds:>9.4f} {r.min_seconds:>9.4f}  {r.checksum}")
