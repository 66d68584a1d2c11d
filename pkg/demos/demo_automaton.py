"""
Dense failure-free automaton over the 5-symbol DNA alphabet
===========================================================

The matcher compiles literals into an Aho-Corasick trie, then folds the
failure links into the transition table itself. The result is a dense
(states x 5) array: one unconditional lookup per input symbol, no failure
chasing at scan time.
"""

import numpy as np

from kmerscan import build_dfa, dump_dfa, encode, expand_to_literals, minimize, outputs_at, parse_expressions, step

exprs = parse_expressions("acg\ncat\ncta\ntta")
dfa = build_dfa(expand_to_literals(exprs))
print(f"states: {dfa.state_count} (alphabet acgt + OTHER)")
print(dump_dfa(dfa))

# Walking the automaton by hand. After "ac" the next symbol decides between
# completing acg, restarting on a suffix, or falling back to the root.
state = dfa.start
for code in encode("ac"):
    state = step(dfa, state, int(code))
print("state after 'ac':", dfa.labels[state])
for ch, code in zip("acgt", range(4)):
    nxt = step(dfa, state, code)
    print(f"  'ac' + '{ch}' -> {dfa.labels[nxt] or '<root>'}  outputs={outputs_at(dfa, nxt)}")

# Any non-acgt byte maps to the OTHER symbol, which always resets to root:
# no literal can span a gap.
other_targets = np.unique(dfa.transitions[:, 4])
print("OTHER column targets:", other_targets)

# Hopcroft minimization merges states whose futures are indistinguishable.
# For this small set nothing merges; the built-in set shrinks noticeably.
mini = minimize(dfa)
print(f"minimized: {mini.state_count} states")
