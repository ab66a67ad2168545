"""Extremal search: exhaustive at tiny n, clone-replace hill climbing above.

Exhaustive search enumerates every oriented graph on n labeled vertices
(three states per vertex pair), hard-capped at n = 6.  The local search
climbs from a seeded random graph using two move families: replacing the
vertex of least conditional density with a clone of the greatest, and
best-improvement reassignment of a single pair's state.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import kernels
from .density import count_fast, vertex_density
from .digraph import Arc, OrientedGraph, StarSpec, build_graph, clone_replace
from .errors import TooLarge

EXHAUSTIVE_CAP = 6


@dataclass(frozen=True)
class SearchResult:
    best_count: int
    best_i: Fraction
    witness: OrientedGraph
    explored: int
    method: str
    restart_counts: tuple[int, ...] | None = None


def _pairs(n: int) -> list[Arc]:
    return list(itertools.combinations(range(n), 2))


def _graph_from_trits(n: int, pairs: list[Arc], trits) -> OrientedGraph:
    arcs = []
    for (u, v), t in zip(pairs, trits):
        if t == 1:
            arcs.append((u, v))
        elif t == 2:
            arcs.append((v, u))
    return build_graph(n, arcs)


def _templates(n: int, spec: StarSpec):
    """One template per (center, out-leaf set, in-leaf set) placement.

    A graph contains that placement iff the center covers both leaf sets
    in the right directions and no leaf pair is adjacent, so the check
    compresses to three mask tests.
    """
    pairs = _pairs(n)
    pair_idx = {p: i for i, p in enumerate(pairs)}
    tc, ta, tb, tp = [], [], [], []
    for c in range(n):
        rest = [v for v in range(n) if v != c]
        for A in itertools.combinations(rest, spec.k):
            remaining = [v for v in rest if v not in A]
            for B in itertools.combinations(remaining, spec.l):
                leaves = sorted(A + B)
                pmask = 0
                for i, x in enumerate(leaves):
                    for y in leaves[i + 1 :]:
                        pmask |= 1 << pair_idx[(x, y)]
                tc.append(c)
                ta.append(sum(1 << v for v in A))
                tb.append(sum(1 << v for v in B))
                tp.append(pmask)
    return (
        np.array(tc, np.int64),
        np.array(ta, np.int64),
        np.array(tb, np.int64),
        np.array(tp, np.int64),
    )


def _transposition_tables(n: int):
    """For each transposition (a, a+1): where each pair's trit comes from
    under the relabeling, and whether its orientation flips."""
    pairs = _pairs(n)
    pair_idx = {p: i for i, p in enumerate(pairs)}
    P = len(pairs)
    src = np.zeros((max(n - 1, 1), P), np.int64)
    flip = np.zeros((max(n - 1, 1), P), np.bool_)
    for a in range(n - 1):
        tau = list(range(n))
        tau[a], tau[a + 1] = tau[a + 1], tau[a]
        for p, (u, v) in enumerate(pairs):
            u2, v2 = tau[u], tau[v]
            dest = pair_idx[(min(u2, v2), max(u2, v2))]
            src[a, dest] = p
            flip[a, dest] = u2 > v2
    return src, flip


def _enumerate_shard_py(n, prefix, pair_u, pair_v, tc, ta, tb, tp, use_skip, src, flip):
    P = len(pair_u)
    L = len(prefix)
    T = len(tc)
    trits = [0] * P
    trits[:L] = list(prefix)
    best_count = -1
    best_trits = None
    explored = 0
    n_trans = src.shape[0]
    while True:
        skip = False
        if use_skip:
            for s in range(n_trans):
                smaller = False
                for p in range(P):
                    a = trits[src[s, p]]
                    if flip[s, p] and a != 0:
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
            out = [0] * n
            inn = [0] * n
            undp = 0
            for p in range(P):
                t = trits[p]
                if t:
                    u, v = pair_u[p], pair_v[p]
                    if t == 1:
                        out[u] |= 1 << v
                        inn[v] |= 1 << u
                    else:
                        out[v] |= 1 << u
                        inn[u] |= 1 << v
                    undp |= 1 << p
            cnt = 0
            for t in range(T):
                c = tc[t]
                if (ta[t] & ~out[c]) == 0 and (tb[t] & ~inn[c]) == 0 and (undp & tp[t]) == 0:
                    cnt += 1
            explored += 1
            if cnt > best_count:
                best_count = cnt
                best_trits = trits.copy()
        p = P - 1
        while p >= L and trits[p] == 2:
            trits[p] = 0
            p -= 1
        if p < L:
            break
        trits[p] += 1
    return best_count, explored, best_trits


def exhaustive_max(
    n: int,
    spec: StarSpec,
    workers: int = 1,
    symmetry_skip: bool = False,
) -> SearchResult:
    """Exact maximum copy count over all n-vertex oriented graphs.

    With symmetry_skip, graphs that an adjacent transposition maps to a
    lexicographically smaller vector are not counted; every skipped graph
    has an isomorphic, lex-smaller representative that is counted, and
    the overall lex-least maximizer is never skipped, so both the value
    and the witness are unchanged.
    """
    if n > EXHAUSTIVE_CAP:
        raise TooLarge(n, EXHAUSTIVE_CAP)
    pairs = _pairs(n)
    P = len(pairs)
    pair_u = np.array([u for u, _ in pairs] or [0], np.int64)
    pair_v = np.array([v for _, v in pairs] or [0], np.int64)
    tc, ta, tb, tp = _templates(n, spec)
    src, flip = _transposition_tables(n)
    if P == 0:
        witness = build_graph(n, [])
        return SearchResult(0, Fraction(0), witness, 1, "exhaustive")

    prefix_len = min(2, P)
    prefixes = list(itertools.product(range(3), repeat=prefix_len))

    if kernels.numba_enabled():
        from ._enum_numba import enumerate_shard

        def run(pref):
            return enumerate_shard(
                n,
                np.array(pref, np.int64),
                pair_u,
                pair_v,
                tc,
                ta,
                tb,
                tp,
                symmetry_skip,
                src,
                flip,
            )

    else:

        def run(pref):
            return _enumerate_shard_py(
                n, pref, pair_u, pair_v, tc, ta, tb, tp, symmetry_skip, src, flip
            )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            shard_results = list(pool.map(run, prefixes))
    else:
        shard_results = [run(pref) for pref in prefixes]

    best_count = -1
    best_trits = None
    explored = 0
    for cnt, exp, trits in shard_results:  # prefix order == lex order
        explored += int(exp)
        if cnt > best_count and trits is not None:
            best_count = int(cnt)
            best_trits = trits
    witness = _graph_from_trits(n, pairs, best_trits)
    binom = comb(n, spec.m + 1)
    best_i = Fraction(best_count, binom) if binom else Fraction(0)
    return SearchResult(best_count, best_i, witness, explored, "exhaustive")


def _pair_states(G: OrientedGraph, a: int, b: int) -> int:
    if G.has_arc(a, b):
        return 1
    if G.has_arc(b, a):
        return 2
    return 0


def _apply_pair(G: OrientedGraph, a: int, b: int, state: int) -> OrientedGraph:
    arcs = set(G.arcs) - {(a, b), (b, a)}
    if state == 1:
        arcs.add((a, b))
    elif state == 2:
        arcs.add((b, a))
    return build_graph(G.n, arcs)


def _climb(spec: StarSpec, n: int, seed: int, max_moves: int, trace: list | None = None):
    rng = np.random.default_rng(seed)
    pairs = _pairs(n)
    trits = rng.integers(0, 3, size=len(pairs))
    G = _graph_from_trits(n, pairs, trits)
    count = count_fast(G, spec)
    if trace is not None:
        trace.append((count, G))
    examined = 0
    accepted = 0
    while accepted < max_moves:
        best_g = None
        best_c = count
        svals = [vertex_density(G, v, spec).s_v for v in range(n)]
        u = max(range(n), key=lambda v: (svals[v], -v))
        w = min(range(n), key=lambda v: (svals[v], v))
        if u != w:
            cand = clone_replace(G, u, w)
            examined += 1
            c = count_fast(cand, spec)
            if c > best_c:
                best_g, best_c = cand, c
        for a, b in pairs:
            cur = _pair_states(G, a, b)
            for state in range(3):
                if state == cur:
                    continue
                cand = _apply_pair(G, a, b, state)
                examined += 1
                c = count_fast(cand, spec)
                if c > best_c:
                    best_g, best_c = cand, c
        if best_g is None:
            break
        G, count = best_g, best_c
        if trace is not None:
            trace.append((count, G))
        accepted += 1
    return count, G, examined


def local_search(
    spec: StarSpec,
    n: int,
    seed: int = 0,
    max_moves: int = 1000,
    restarts: int = 1,
    workers: int = 1,
) -> SearchResult:
    """Hill-climb restarts from seeds seed, seed+1, ...; best result wins,
    earlier seed on ties."""
    assert n >= spec.m + 1
    seeds = [seed + r for r in range(restarts)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(lambda s: _climb(spec, n, s, max_moves), seeds))
    else:
        runs = [_climb(spec, n, s, max_moves) for s in seeds]
    best_count, best_g = -1, None
    explored = 0
    for cnt, g, exam in runs:
        explored += exam
        if cnt > best_count:
            best_count, best_g = cnt, g
    binom = comb(n, spec.m + 1)
    best_i = Fraction(best_count, binom) if binom else Fraction(0)
    return SearchResult(
        best_count,
        best_i,
        best_g,
        explored,
        "local",
        restart_counts=tuple(cnt for cnt, _, _ in runs),
    )
