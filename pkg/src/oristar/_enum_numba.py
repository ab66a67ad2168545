"""Compiled exhaustive enumeration over all orientations of pair states.

Graphs on n labeled vertices are encoded as base-3 vectors over the
C(n,2) vertex pairs in lexicographic order: 0 = no arc, 1 = arc from the
lower to the higher endpoint, 2 = the reverse.  The enumerator walks one
shard (a fixed prefix of the vector) in lexicographic order, counts
induced copies per graph against precomputed role templates, and keeps
the first graph attaining the running maximum, which is therefore the
lexicographically least witness.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def enumerate_shard(
    n,
    prefix,
    pair_u,
    pair_v,
    tmpl_c,
    tmpl_a,
    tmpl_b,
    tmpl_p,
    use_skip,
    skip_src,
    skip_flip,
):
    P = pair_u.shape[0]
    L = prefix.shape[0]
    T = tmpl_c.shape[0]
    trits = np.zeros(P, np.int64)
    for i in range(L):
        trits[i] = prefix[i]
    out = np.zeros(n, np.int64)
    inn = np.zeros(n, np.int64)
    best_count = np.int64(-1)
    best_trits = np.zeros(P, np.int64)
    explored = np.int64(0)
    n_trans = skip_src.shape[0]
    while True:
        skip = False
        if use_skip:
            for s in range(n_trans):
                smaller = False
                for p in range(P):
                    a = trits[skip_src[s, p]]
                    if skip_flip[s, p] and a != 0:
                        a = 3 - a
                    b = trits[p]
                    if a < b:
                        smaller = True
                        break
                    if a > b:
                        break
                if smaller:
                    skip = True
                    break
        if not skip:
            for v in range(n):
                out[v] = 0
                inn[v] = 0
            undp = np.int64(0)
            for p in range(P):
                t = trits[p]
                if t != 0:
                    u = pair_u[p]
                    v = pair_v[p]
                    if t == 1:
                        out[u] |= np.int64(1) << v
                        inn[v] |= np.int64(1) << u
                    else:
                        out[v] |= np.int64(1) << u
                        inn[u] |= np.int64(1) << v
                    undp |= np.int64(1) << p
            cnt = np.int64(0)
            for t in range(T):
                c = tmpl_c[t]
                if (
                    (tmpl_a[t] & ~out[c]) == 0
                    and (tmpl_b[t] & ~inn[c]) == 0
                    and (undp & tmpl_p[t]) == 0
                ):
                    cnt += 1
            explored += 1
            if cnt > best_count:
                best_count = cnt
                for p in range(P):
                    best_trits[p] = trits[p]
        p = P - 1
        while p >= L and trits[p] == 2:
            trits[p] = 0
            p -= 1
        if p < L:
            break
        trits[p] += 1
    return best_count, explored, best_trits
