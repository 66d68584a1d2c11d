"""Dense failure-free multi-pattern automaton.

The builder inserts every literal into a trie, computes Aho-Corasick failure
links breadth-first, then folds each missing trie edge into a direct
transition, so the table is total: one load per input symbol, no failure
chasing at scan time. Outputs are per-state multisets of expression ids with
dictionary-suffix closure, which is what makes overlapping occurrences count.

Reading OTHER from any state returns to the start state: no literal contains
it, so it kills every partial match.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .alphabet import BASE_CODES, N_SYMBOLS, OTHER
from .patterns import LiteralTable

START = 0


@dataclass(frozen=True)
class Dfa:
    """Immutable dense automaton: (states, 5-symbol alphabet, total table, start=0, outputs).

    transitions: (state_count, 5) int32, row-major; column order a, c, g, t, OTHER.
    out_offsets/out_ids: CSR layout of each state's output multiset, ids sorted,
    multiplicity preserved (two literals of one expression ending together count twice).
    labels: trie-prefix string per state, diagnostic only.
    """

    transitions: np.ndarray
    out_offsets: np.ndarray
    out_ids: np.ndarray
    labels: tuple[str, ...]
    n_expressions: int

    start: int = START

    @property
    def state_count(self) -> int:
        return self.transitions.shape[0]

    def __post_init__(self):
        self.transitions.setflags(write=False)
        self.out_offsets.setflags(write=False)
        self.out_ids.setflags(write=False)


def build_dfa(table: LiteralTable) -> Dfa:
    """Build the dense suffix-closed automaton for a literal table."""
    if not table.literals:
        raise ValueError("cannot build an automaton from an empty literal table")

    # Trie with provisional ids in insertion order.
    children: list[dict[int, int]] = [{}]
    endings: list[list[int]] = [[]]
    for literal, expr_id in table.literals:
        if not literal:
            raise ValueError("empty literal")
        node = 0
        for ch in literal:
            code = BASE_CODES.get(ch)
            if code is None:
                raise ValueError(f"literal {literal!r} contains non-base character {ch!r}")
            nxt = children[node].get(code)
            if nxt is None:
                nxt = len(children)
                children[node][code] = nxt
                children.append({})
                endings.append([])
            node = nxt
        endings[node].append(expr_id)

    # Renumber breadth-first, children visited in a<c<g<t order, root stays 0.
    order: list[int] = [0]
    queue = deque([0])
    while queue:
        node = queue.popleft()
        for code in range(4):
            child = children[node].get(code)
            if child is not None:
                order.append(child)
                queue.append(child)
    new_id = {old: new for new, old in enumerate(order)}
    n = len(order)

    child_table = np.full((n, 4), -1, dtype=np.int64)
    own_endings: list[list[int]] = [[] for _ in range(n)]
    labels = [""] * n
    for old_node in order:
        s = new_id[old_node]
        own_endings[s] = endings[old_node]
        for code, old_child in children[old_node].items():
            c = new_id[old_child]
            child_table[s, code] = c
            labels[c] = labels[s] + "acgt"[code]

    # Failure links + densification in one BFS pass. States are numbered in
    # BFS order, so fail[s] is always already known when s is processed.
    transitions = np.zeros((n, N_SYMBOLS), dtype=np.int32)
    fail = np.zeros(n, dtype=np.int64)
    for code in range(4):
        child = child_table[START, code]
        if child >= 0:
            transitions[START, code] = child
            fail[child] = START
    for s in range(1, n):
        for code in range(4):
            child = child_table[s, code]
            if child >= 0:
                fail[child] = transitions[fail[s], code]
                transitions[s, code] = child
            else:
                transitions[s, code] = transitions[fail[s], code]
    transitions[:, OTHER] = START

    # Suffix-closed output multisets: own endings plus the failure target's
    # accumulated outputs (transitive, since fail[s] < s in BFS order).
    out_lists: list[list[int]] = [[] for _ in range(n)]
    out_lists[START] = sorted(own_endings[START])
    for s in range(1, n):
        out_lists[s] = sorted(own_endings[s] + out_lists[fail[s]])

    return Dfa(
        transitions=transitions,
        out_offsets=_csr_offsets(out_lists),
        out_ids=np.array([e for lst in out_lists for e in lst], dtype=np.int32),
        labels=tuple(labels),
        n_expressions=table.n_expressions,
    )


def _csr_offsets(lists: list[list[int]]) -> np.ndarray:
    sizes = np.fromiter((len(lst) for lst in lists), dtype=np.int32, count=len(lists))
    offsets = np.zeros(len(lists) + 1, dtype=np.int32)
    np.cumsum(sizes, out=offsets[1:])
    return offsets


def step(dfa: Dfa, state: int, symbol: int) -> int:
    """Total transition function; never fails for valid state/symbol."""
    if not 0 <= state < dfa.state_count:
        raise ValueError(f"state {state} out of range")
    if not 0 <= symbol < N_SYMBOLS:
        raise ValueError(f"symbol {symbol} out of range")
    return int(dfa.transitions[state, symbol])


def outputs_at(dfa: Dfa, state: int) -> tuple[int, ...]:
    """Expression-id multiset emitted on entering `state` (sorted, with multiplicity)."""
    if not 0 <= state < dfa.state_count:
        raise ValueError(f"state {state} out of range")
    lo, hi = dfa.out_offsets[state], dfa.out_offsets[state + 1]
    return tuple(int(e) for e in dfa.out_ids[lo:hi])


def minimize(dfa: Dfa) -> Dfa:
    """Merge output-equivalent states (Hopcroft-style partition refinement).

    The initial partition groups states by output multiset, so the result
    produces bit-identical counts on every input. Off the default pipeline;
    exists to compare state counts against the raw suffix-closed build.
    """
    n = dfa.state_count

    by_outputs: dict[tuple[int, ...], set[int]] = {}
    for s in range(n):
        by_outputs.setdefault(outputs_at(dfa, s), set()).add(s)

    partition: set[frozenset[int]] = {frozenset(block) for block in by_outputs.values()}
    block_of: dict[int, frozenset[int]] = {}
    for block in partition:
        for s in block:
            block_of[s] = block

    # Predecessors per (symbol, target).
    preds: dict[tuple[int, int], list[int]] = {}
    for s in range(n):
        for code in range(N_SYMBOLS):
            preds.setdefault((code, int(dfa.transitions[s, code])), []).append(s)

    worklist: set[frozenset[int]] = set(partition)
    while worklist:
        splitter = worklist.pop()
        for code in range(N_SYMBOLS):
            incoming: set[int] = set()
            for target in splitter:
                incoming.update(preds.get((code, target), ()))
            affected: dict[frozenset[int], set[int]] = {}
            for q in incoming:
                affected.setdefault(block_of[q], set()).add(q)
            for block, overlap in affected.items():
                if len(overlap) == len(block):
                    continue
                part1 = frozenset(overlap)
                part2 = block - part1
                partition.remove(block)
                partition.add(part1)
                partition.add(part2)
                for s in part1:
                    block_of[s] = part1
                for s in part2:
                    block_of[s] = part2
                if block in worklist:
                    worklist.remove(block)
                    worklist.add(part1)
                    worklist.add(part2)
                else:
                    worklist.add(part1 if len(part1) <= len(part2) else part2)

    # Renumber blocks breadth-first from the start block (base order, then
    # OTHER) so rebuilt automata are deterministic.
    start_block = block_of[START]
    block_id: dict[frozenset[int], int] = {start_block: 0}
    bfs: list[frozenset[int]] = [start_block]
    queue = deque([start_block])
    while queue:
        block = queue.popleft()
        rep = min(block)
        for code in range(N_SYMBOLS):
            succ = block_of[int(dfa.transitions[rep, code])]
            if succ not in block_id:
                block_id[succ] = len(bfs)
                bfs.append(succ)
                queue.append(succ)

    m = len(bfs)
    transitions = np.zeros((m, N_SYMBOLS), dtype=np.int32)
    out_lists: list[list[int]] = []
    labels: list[str] = []
    for block in bfs:
        rep = min(block)
        idx = block_id[block]
        for code in range(N_SYMBOLS):
            transitions[idx, code] = block_id[block_of[int(dfa.transitions[rep, code])]]
        out_lists.append(list(outputs_at(dfa, rep)))
        labels.append(dfa.labels[rep])

    return Dfa(
        transitions=transitions,
        out_offsets=_csr_offsets(out_lists),
        out_ids=np.array([e for lst in out_lists for e in lst], dtype=np.int32),
        labels=tuple(labels),
        n_expressions=dfa.n_expressions,
    )


def dump_dfa(dfa: Dfa) -> str:
    """Tab-separated table: state id, label, 5 targets (a,c,g,t,OTHER), output ids."""
    lines = []
    for s in range(dfa.state_count):
        targets = "\t".join(str(int(t)) for t in dfa.transitions[s])
        outs = ",".join(str(e) for e in outputs_at(dfa, s))
        lines.append(f"{s}\t{dfa.labels[s]}\t{targets}\t{outs}")
    return "\n".join(lines) + "\n"
