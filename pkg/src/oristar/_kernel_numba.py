"""Accelerated counting kernel: same recursion as the Python path, compiled.

Pools live in fixed-width uint64 word arrays; the recursion is unrolled
onto an explicit stack (depth is bounded by one exclude step per pool
vertex plus one pending sibling per level, so 2n + 8 slots suffice).  All
arithmetic is int64; callers guarantee the result and every partial
product of binomials fit, falling back to the big-int path otherwise.

Also houses the per-sample Monte-Carlo success test; the sampling itself
stays in numpy so both backends consume identical draws.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S56 = np.uint64(56)


@njit(cache=True, inline="always")
def _popcnt(x):
    x = x - ((x >> _S1) & _M1)
    x = (x & _M2) + ((x >> _S2) & _M2)
    x = (x + (x >> _S4)) & _M4
    return np.int64((x * _H01) >> _S56)


@njit(cache=True, nogil=True)
def count_pairs_words(und, pa0, pb0, ka0, kb0, comb):
    """Exact pair count; und is (n, W) uint64, pools are (W,) uint64."""
    n, w = und.shape
    cap = 2 * n + 8
    sa = np.zeros((cap, w), np.uint64)
    sb = np.zeros((cap, w), np.uint64)
    ska = np.zeros(cap, np.int64)
    skb = np.zeros(cap, np.int64)
    cur_a = np.zeros(w, np.uint64)
    cur_b = np.zeros(w, np.uint64)
    for j in range(w):
        sa[0, j] = pa0[j]
        sb[0, j] = pb0[j]
    ska[0] = ka0
    skb[0] = kb0
    top = 0
    total = np.int64(0)
    while top >= 0:
        for j in range(w):
            cur_a[j] = sa[top, j]
            cur_b[j] = sb[top, j]
        ka = ska[top]
        kb = skb[top]
        top -= 1
        ca = np.int64(0)
        cb = np.int64(0)
        for j in range(w):
            ca += _popcnt(cur_a[j])
            cb += _popcnt(cur_b[j])
        if ka > ca or kb > cb:
            continue
        if ka == 0 and kb == 0:
            total += 1
            continue
        best_v = -1
        best_deg = np.int64(0)
        for j in range(w):
            word = cur_a[j] | cur_b[j]
            while word != np.uint64(0):
                low = word & (~word + _S1)
                bit_index = np.int64(0)
                probe = low
                while probe > _S1:
                    probe >>= _S1
                    bit_index += 1
                v = 64 * j + bit_index
                word ^= low
                deg = np.int64(0)
                for jj in range(w):
                    deg += _popcnt(und[v, jj] & (cur_a[jj] | cur_b[jj]))
                if deg > best_deg:
                    best_deg = deg
                    best_v = v
        if best_deg == 0:
            total += comb[ca, ka] * comb[cb, kb]
            continue
        vw = best_v // 64
        vbit = np.uint64(1) << np.uint64(best_v % 64)
        in_a = (cur_a[vw] & vbit) != np.uint64(0)
        # exclude branch
        top += 1
        for j in range(w):
            sa[top, j] = cur_a[j]
            sb[top, j] = cur_b[j]
        if in_a:
            sa[top, vw] = cur_a[vw] ^ vbit
        else:
            sb[top, vw] = cur_b[vw] ^ vbit
        ska[top] = ka
        skb[top] = kb
        # include branch
        if (in_a and ka >= 1) or ((not in_a) and kb >= 1):
            top += 1
            for j in range(w):
                drop = und[best_v, j]
                if j == vw:
                    drop |= vbit
                sa[top, j] = cur_a[j] & ~drop
                sb[top, j] = cur_b[j] & ~drop
            if in_a:
                ska[top] = ka - 1
                skb[top] = kb
            else:
                ska[top] = ka
                skb[top] = kb - 1
    return total


@njit(cache=True, nogil=True)
def mc_hits(out_adj, und_adj, samples, k, l):
    """Count rows of `samples` that map to an induced star, roles by column.

    Column 0 is the center image, columns 1..k the out-leaf images,
    columns k+1..k+l the in-leaf images.
    """
    nrows = samples.shape[0]
    m = k + l
    hits = np.int64(0)
    for r in range(nrows):
        c = samples[r, 0]
        ok = True
        for j in range(1, k + 1):
            if out_adj[c, samples[r, j]] == 0:
                ok = False
                break
        if ok:
            for j in range(k + 1, m + 1):
                if out_adj[samples[r, j], c] == 0:
                    ok = False
                    break
        if ok:
            for a in range(1, m + 1):
                for b in range(a + 1, m + 1):
                    va = samples[r, a]
                    vb = samples[r, b]
                    if va == vb or und_adj[va, vb] != 0:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            hits += 1
    return hits
