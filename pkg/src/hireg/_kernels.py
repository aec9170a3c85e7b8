"""Numba kernels for induced-embedding extension counting.

Adjacency is packed into 64-bit words; the extension search is a
depth-first backtrack over the non-anchor pattern vertices with bitset
candidate intersection, adding a popcount at the last level.
"""
from __future__ import annotations

import numpy as np
from numba import njit

U64_1 = np.uint64(1)
U64_0 = np.uint64(0)


@njit(cache=True, inline="always")
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + (
        (x >> np.uint64(2)) & np.uint64(0x3333333333333333)
    )
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True)
def batch_extension_counts(adjp, nadjp, kappas, reqa, e):
    """Extension counts for each prefix assignment in `kappas`.

    adjp/nadjp: (n, w) uint64 packed adjacency / non-adjacency rows (the
    non-adjacency rows exclude the diagonal and bits >= n).
    kappas: (K, mt) int64 assignments of the first mt pattern vertices.
    reqa: (e, mt+e) uint8; reqa[p][s] == 1 iff pattern vertex mt+p must be
    adjacent to pattern vertex s (else: must be non-adjacent); entries at
    s >= mt+p are ignored.  Requires mt >= 1 whenever e > 0, so that the
    seed intersection is bounded by a real adjacency row.
    """
    n, w = adjp.shape
    kcount, mt = kappas.shape
    out = np.zeros(kcount, dtype=np.int64)
    if e == 0:
        for i in range(kcount):
            out[i] = 1
        return out
    cand = np.zeros((e, w), dtype=np.uint64)
    assigned = np.zeros(mt + e, dtype=np.int64)
    for ki in range(kcount):
        for s in range(mt):
            assigned[s] = kappas[ki, s]
        total = np.int64(0)
        # seed level 0
        for k in range(w):
            acc = ~U64_0
            for s in range(mt):
                row = adjp if reqa[0, s] else nadjp
                acc &= row[assigned[s], k]
            cand[0, k] = acc
        p = 0
        while p >= 0:
            if p == e - 1:
                s = np.uint64(0)
                for k in range(w):
                    s += _popcount64(cand[p, k])
                total += np.int64(s)
                p -= 1
                continue
            # pick next candidate at level p
            v = -1
            for k in range(w):
                word = cand[p, k]
                if word != U64_0:
                    bit = word & (~word + U64_1)
                    # index of lowest set bit
                    b = 0
                    t = bit
                    while t > U64_1:
                        t >>= np.uint64(1)
                        b += 1
                    v = 64 * k + b
                    cand[p, k] = word ^ bit
                    break
            if v < 0:
                p -= 1
                continue
            assigned[mt + p] = v
            nxt = p + 1
            for k in range(w):
                acc = ~U64_0
                for s in range(mt + nxt):
                    row = adjp if reqa[nxt, s] else nadjp
                    acc &= row[assigned[s], k]
                cand[nxt, k] = acc
            p = nxt
        out[ki] = total
    return out
