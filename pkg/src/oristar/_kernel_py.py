"""Pure-Python counting kernel over arbitrary-precision int bitmasks.

Counts pairs (A, B) with A a ka-subset of pool_a, B a kb-subset of pool_b,
and A union B independent in the undirected adjacency (pools are disjoint
because oriented graphs have no digons, so A and B never collide).

The recursion branches on a pivot vertex: the pool vertex of maximum
degree inside the remaining pool, ties to the lowest id.  Excluding the pivot
shrinks one pool by one; including it removes its closed neighborhood from
both pools and decrements its side's quota.  Once the pool is edgeless the
remaining choices are free and collapse to a product of binomials.

Counts are exact Python ints, so this path never overflows; it is also the
fallback when the accelerated kernel is unavailable or would exceed int64.
"""

from __future__ import annotations

from math import comb


def count_pairs(und: tuple[int, ...], pool_a: int, pool_b: int, ka: int, kb: int) -> int:
    """Number of independent (ka out of pool_a, kb out of pool_b) pairs."""
    if ka < 0 or kb < 0:
        return 0
    return _rec(und, pool_a, pool_b, ka, kb)


def _rec(und: tuple[int, ...], pa: int, pb: int, ka: int, kb: int) -> int:
    ca = pa.bit_count()
    cb = pb.bit_count()
    if ka > ca or kb > cb:
        return 0
    if ka == 0 and kb == 0:
        return 1
    pool = pa | pb
    best_v = -1
    best_deg = 0
    scan = pool
    while scan:
        low = scan & -scan
        v = low.bit_length() - 1
        scan ^= low
        deg = (und[v] & pool).bit_count()
        if deg > best_deg:
            best_deg = deg
            best_v = v
    if best_deg == 0:
        return comb(ca, ka) * comb(cb, kb)
    bit = 1 << best_v
    keep = ~(und[best_v] | bit)
    if pa & bit:
        total = _rec(und, pa ^ bit, pb, ka, kb)
        if ka >= 1:
            total += _rec(und, pa & keep, pb & keep, ka - 1, kb)
    else:
        total = _rec(und, pa, pb ^ bit, ka, kb)
        if kb >= 1:
            total += _rec(und, pa & keep, pb & keep, ka, kb - 1)
    return total
