"""Induced-star counts and densities, exact and Monte-Carlo.

Two equivalent normalizations of the same copy count are tracked:

    i(S, G) = count / C(n, m+1)        (induced density)
    s(G)    = count * k! * l! / n^(m+1) (map density)

s(G) is the probability that a uniformly random map from the star's
m+1 vertices into V(G), roles fixed in advance, lands on an induced
copy.  Non-injective maps never land, which is where the k! * l! /
(m+1)! gap between the two normalizations comes from.

All exact quantities are Fractions; only Monte-Carlo output is float.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, sqrt

import numpy as np

from . import kernels
from .digraph import OrientedGraph, StarSpec
from .errors import IdOutOfRange, SameVertex

MC_BATCH = 1 << 18


@dataclass(frozen=True)
class DensityReport:
    count: int
    i_density: Fraction
    s_density: Fraction
    n: int
    spec: StarSpec


@dataclass(frozen=True)
class VertexDensity:
    """Per-vertex conditionals s(v), s(c->v), s(i->v), s(o->v)."""

    s_v: Fraction
    s_center: Fraction
    s_inleaf: Fraction
    s_outleaf: Fraction


@dataclass(frozen=True)
class TypedDensities:
    """s(G) split by where a copy's center and leaves land.

    s1: center in X, all leaves in Y.    s2: center in Y, all leaves in X.
    sX / sY: the whole copy inside one side.  s0: leaves on both sides.
    """

    s1: Fraction
    s2: Fraction
    sX: Fraction
    sY: Fraction
    s0: Fraction
    partition: tuple[frozenset[int], frozenset[int]]


@dataclass(frozen=True)
class MCEstimate:
    estimate: float
    std_error: float
    samples: int
    seed: int


def _subset_is_star(G: OrientedGraph, subset: tuple[int, ...], k: int, l: int) -> bool:
    sset = frozenset(subset)
    for c in subset:
        outs = G.out_neighbors(c) & sset
        ins = G.in_neighbors(c) & sset
        if len(outs) != k or len(ins) != l:
            continue
        leaves = sorted(outs | ins)
        if len(leaves) != k + l:
            continue
        if all(
            not G.adjacent(a, b)
            for i, a in enumerate(leaves)
            for b in leaves[i + 1 :]
        ):
            return True
    return False


def count_oracle(G: OrientedGraph, spec: StarSpec) -> int:
    """Reference count: test every (m+1)-subset directly."""
    k, l = spec.k, spec.l
    total = 0
    for subset in itertools.combinations(range(G.n), spec.m + 1):
        if _subset_is_star(G, subset, k, l):
            total += 1
    return total


def _center_count(masks: kernels.GraphMasks, c: int, k: int, l: int) -> int:
    return kernels.count_pairs(masks, masks.out_mask[c], masks.in_mask[c], k, l)


def count_fast(G: OrientedGraph, spec: StarSpec, workers: int = 1) -> int:
    """Per-center count; each copy is charged to its unique center."""
    if G.n <= spec.m + 3:
        return count_oracle(G, spec)
    masks = kernels.graph_masks(G)
    k, l = spec.k, spec.l
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(lambda c: _center_count(masks, c, k, l), range(G.n))
        return sum(parts)
    return sum(_center_count(masks, c, k, l) for c in range(G.n))


def density_report(G: OrientedGraph, spec: StarSpec, workers: int = 1) -> DensityReport:
    count = count_fast(G, spec, workers=workers)
    n, m = G.n, spec.m
    binom = comb(n, m + 1)
    i_density = Fraction(count, binom) if binom else Fraction(0)
    s_density = Fraction(count * factorial(spec.k) * factorial(spec.l), n ** (m + 1))
    return DensityReport(count=count, i_density=i_density, s_density=s_density, n=n, spec=spec)


def _role_counts(G: OrientedGraph, v: int, spec: StarSpec) -> tuple[int, int, int]:
    """Copies containing v as (center, one of the in-leaves, one of the out-leaves)."""
    masks = kernels.graph_masks(G)
    k, l = spec.k, spec.l
    centered = _center_count(masks, v, k, l)
    avoid = masks.und_mask[v] | (1 << v)
    inleaf = 0
    for c in G.out_neighbors(v):  # v -> c makes v an in-leaf of c
        inleaf += kernels.count_pairs(
            masks, masks.out_mask[c] & ~avoid, masks.in_mask[c] & ~avoid, k, l - 1
        )
    outleaf = 0
    for c in G.in_neighbors(v):
        outleaf += kernels.count_pairs(
            masks, masks.out_mask[c] & ~avoid, masks.in_mask[c] & ~avoid, k - 1, l
        )
    return centered, inleaf, outleaf


def vertex_density(G: OrientedGraph, v: int, spec: StarSpec) -> VertexDensity:
    if not 0 <= v < G.n:
        raise IdOutOfRange(v, G.n)
    centered, inleaf, outleaf = _role_counts(G, v, spec)
    n, m, k, l = G.n, spec.m, spec.k, spec.l
    kf, lf = factorial(k), factorial(l)
    denom = n**m
    return VertexDensity(
        s_v=Fraction((centered + inleaf + outleaf) * kf * lf, (m + 1) * denom),
        s_center=Fraction(centered * kf * lf, denom),
        s_inleaf=Fraction(inleaf * kf * factorial(l - 1), denom),
        s_outleaf=Fraction(outleaf * factorial(k - 1) * lf, denom),
    )


def pair_conditional(G: OrientedGraph, u: int, v: int, spec: StarSpec) -> Fraction:
    """s(u, v): chance a random map hits an induced copy given that two
    fixed distinct star vertices land on u and v, averaged over the
    (m+1)m ordered slot choices.  Oracle path only."""
    for w in (u, v):
        if not 0 <= w < G.n:
            raise IdOutOfRange(w, G.n)
    if u == v:
        raise SameVertex(u)
    k, l, m = spec.k, spec.l, spec.m
    rest = [w for w in range(G.n) if w != u and w != v]
    paircnt = 0
    for others in itertools.combinations(rest, m - 1):
        if _subset_is_star(G, others + (u, v), k, l):
            paircnt += 1
    num = paircnt * factorial(k) * factorial(l)
    return Fraction(num, (m + 1) * m * G.n ** (m - 1))


def monte_carlo_s(
    G: OrientedGraph, spec: StarSpec, samples: int, seed: int, workers: int = 1
) -> MCEstimate:
    """Unbiased s(G) estimator over uniform random vertex maps.

    Sampling is batched; every batch draws from its own stream spawned
    off the master seed, so the result is reproducible for a given seed
    regardless of worker count.
    """
    assert samples >= 1
    masks = kernels.graph_masks(G)
    m = spec.m
    nbatches = (samples + MC_BATCH - 1) // MC_BATCH
    streams = np.random.SeedSequence(seed).spawn(nbatches)

    def run_batch(b: int) -> int:
        size = min(MC_BATCH, samples - b * MC_BATCH)
        rng = np.random.default_rng(streams[b])
        draws = rng.integers(0, G.n, size=(size, m + 1))
        return kernels.mc_hits(masks, draws, spec.k, spec.l)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(run_batch, range(nbatches)))
    else:
        hits = sum(run_batch(b) for b in range(nbatches))
    p = hits / samples
    se = sqrt(p * (1.0 - p) / samples)
    return MCEstimate(estimate=p, std_error=se, samples=samples, seed=seed)


def natural_partition(G: OrientedGraph) -> frozenset[int]:
    """X = vertices adjacent to at least half the graph (rho >= 1/2)."""
    masks = kernels.graph_masks(G)
    return frozenset(v for v in range(G.n) if 2 * masks.und_mask[v].bit_count() >= G.n)


def typed_densities(
    G: OrientedGraph, spec: StarSpec, X: frozenset[int] | None = None
) -> TypedDensities:
    if X is None:
        X = natural_partition(G)
    else:
        X = frozenset(X)
        for v in X:
            if not 0 <= v < G.n:
                raise IdOutOfRange(v, G.n)
    masks = kernels.graph_masks(G)
    k, l = spec.k, spec.l
    x_bits = sum(1 << v for v in X)
    y_bits = ((1 << G.n) - 1) ^ x_bits
    c1 = c2 = cX = cY = c0 = 0
    for c in range(G.n):
        po, pi = masks.out_mask[c], masks.in_mask[c]
        total = kernels.count_pairs(masks, po, pi, k, l)
        in_x = kernels.count_pairs(masks, po & x_bits, pi & x_bits, k, l)
        in_y = kernels.count_pairs(masks, po & y_bits, pi & y_bits, k, l)
        if x_bits >> c & 1:
            c1 += in_y
            cX += in_x
        else:
            c2 += in_x
            cY += in_y
        c0 += total - in_x - in_y
    scale = Fraction(factorial(k) * factorial(l), G.n ** (spec.m + 1))
    return TypedDensities(
        s1=c1 * scale,
        s2=c2 * scale,
        sX=cX * scale,
        sY=cY * scale,
        s0=c0 * scale,
        partition=(frozenset(X), frozenset(range(G.n)) - X),
    )
