"""Compiled scan loops.

One transition-table load per input symbol is the whole point of the dense
automaton, so the hot loops live here as nopython kernels. nogil=True lets
chunk workers run these in plain threads with real parallelism.

match_chunk_kernel writes into caller-provided buffers instead of allocating:
the engine allocates per call (negligible there), while exhaustive
verification sweeps reuse one set of buffers across ~10^8 invocations.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def scan_from(trans, out_off, out_ids, sym, start, end, state, counts):
    """Full scan of sym[start:end] from `state`, accumulating output counts.

    Returns the final state.
    """
    s = np.int64(state)
    for j in range(start, end):
        s = trans[s, sym[j]]
        for k in range(out_off[s], out_off[s + 1]):
            counts[out_ids[k]] += 1
    return s


@njit(cache=True, nogil=True)
def _push_location(loc, nloc, offset, expr_id):
    if nloc == loc.shape[0]:
        bigger = np.empty((2 * loc.shape[0] + 64, 2), np.int64)
        bigger[:nloc] = loc[:nloc]
        loc = bigger
    loc[nloc, 0] = offset
    loc[nloc, 1] = expr_id
    return loc, nloc + 1


@njit(cache=True, nogil=True)
def match_chunk_kernel(trans, out_off, out_ids, sym, c_start, c_end, g_off,
                       pss, window, locate,
                       counts, last, conv, fr_states, fr_counts, loc_off, loc_in):
    """Run the full scan plus all speculative runs for one chunk.

    sym[c_start:c_end] is the chunk; g_off is its global start offset (used
    only for recorded match-end offsets). pss lists the candidate start
    states, pss[0] being the full run whose first min(window, chunk) states
    and cumulative counts are recorded for the convergence check.

    Caller-provided outputs (nr = len(pss), ne = expression count):
      counts (nr, ne) int64   per-run occurrence counts (reconciled on convergence)
      last   (nr,)    int64   final state per run (the full run's for converged runs)
      conv   (nr,)    int64   convergence position, -1 if the run scanned fully
      fr_states (weff,), fr_counts (weff, ne)  with weff = min(window, chunk length)
      loc_off (nr+1,) int64   CSR offsets into the returned location buffer

    Returns the (n, 2) location rows [end offset, expression id]; empty unless
    locate. A speculative run's rows stop at its convergence position; the
    full run's and non-converged runs' rows cover the whole chunk.
    """
    nr = pss.shape[0]
    ne = counts.shape[1]
    m = c_end - c_start
    weff = fr_states.shape[0]

    counts[:, :] = 0
    loc = loc_in
    nloc = 0
    loc_off[0] = 0

    # Full run: records the convergence window.
    s = np.int64(pss[0])
    for j in range(m):
        s = trans[s, sym[c_start + j]]
        for k in range(out_off[s], out_off[s + 1]):
            e = out_ids[k]
            counts[0, e] += 1
            if locate:
                loc, nloc = _push_location(loc, nloc, g_off + j + 1, e)
        if j < weff:
            fr_states[j] = s
            for e2 in range(ne):
                fr_counts[j, e2] = counts[0, e2]
    last[0] = s
    conv[0] = -1
    loc_off[1] = nloc

    # Speculative runs: stop at the first state shared with the full run and
    # reconcile counts; outputs at the convergence position sit on both sides
    # of the subtraction, so they are neither dropped nor double-counted.
    for i in range(1, nr):
        s = np.int64(pss[i])
        conv[i] = -1
        for j in range(m):
            s = trans[s, sym[c_start + j]]
            for k in range(out_off[s], out_off[s + 1]):
                e = out_ids[k]
                counts[i, e] += 1
                if locate:
                    loc, nloc = _push_location(loc, nloc, g_off + j + 1, e)
            if j < weff and s == fr_states[j]:
                conv[i] = j
                for e2 in range(ne):
                    counts[i, e2] += counts[0, e2] - fr_counts[j, e2]
                s = np.int64(last[0])
                break
        last[i] = s
        loc_off[i + 1] = nloc
    return loc[:nloc]


@njit(cache=True, nogil=True)
def reconciliation_sweep(trans, out_off, out_ids, ne, pss_data, pss_off, length, window):
    """Check the reconciliation identity on every word of one length.

    Enumerates all 4**length words over the bases; for every border-symbol
    class, runs the production chunk kernel with that border's start-state
    set and verifies each converged speculative run against an independent
    full scan from the same start state.

    Returns (speculative_runs, converged_runs, count_mismatches,
    final_state_mismatches).
    """
    n_borders = pss_off.shape[0] - 1
    nr_max = 0
    for b in range(n_borders):
        nr = pss_off[b + 1] - pss_off[b]
        if nr > nr_max:
            nr_max = nr

    counts = np.zeros((nr_max, ne), np.int64)
    last = np.zeros(nr_max, np.int64)
    conv = np.zeros(nr_max, np.int64)
    weff = min(window, length)
    fr_states = np.zeros(weff, np.int64)
    fr_counts = np.zeros((weff, ne), np.int64)
    loc_off = np.zeros(nr_max + 1, np.int64)
    loc_in = np.zeros((0, 2), np.int64)
    full = np.zeros(ne, np.int64)
    word = np.zeros(length, np.uint8)

    speculative_runs = 0
    converged = 0
    bad_counts = 0
    bad_state = 0
    while True:
        for b in range(n_borders):
            lo = pss_off[b]
            nr = pss_off[b + 1] - lo
            pss = pss_data[lo:lo + nr]
            match_chunk_kernel(trans, out_off, out_ids, word, 0, length, 0,
                               pss, window, False,
                               counts[:nr], last[:nr], conv[:nr],
                               fr_states, fr_counts, loc_off[:nr + 1], loc_in)
            for i in range(1, nr):
                speculative_runs += 1
                if conv[i] >= 0:
                    converged += 1
                    for e in range(ne):
                        full[e] = 0
                    fs = scan_from(trans, out_off, out_ids, word, 0, length, pss[i], full)
                    for e in range(ne):
                        if full[e] != counts[i, e]:
                            bad_counts += 1
                            break
                    if fs != last[i]:
                        bad_state += 1
        k = length - 1
        while k >= 0 and word[k] == 3:
            word[k] = 0
            k -= 1
        if k < 0:
            break
        word[k] += 1
    return speculative_runs, converged, bad_counts, bad_state
