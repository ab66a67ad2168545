"""Backend dispatch for the counting and sampling kernels.

Two interchangeable backends compute the same exact integers:

  * the compiled kernel (`_kernel_numba`), used when numba imports cleanly,
    the env flag ORISTAR_NO_NUMBA is unset, and the result provably fits
    in int64;
  * the pure-Python big-int kernel (`_kernel_py`), used otherwise.

The int64 guard is conservative: the count and every partial product the
recursion evaluates are bounded by C(|pool_a|, ka) * C(|pool_b|, kb), so
that bound is checked per call with exact arithmetic.

Adjacency is kept in three redundant forms, built lazily per graph: Python
int bitmasks (big-int kernel), (n, W) uint64 word arrays (compiled
kernel), and dense uint8 matrices (Monte-Carlo tests).
"""

from __future__ import annotations

import os
import weakref
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .digraph import OrientedGraph

_INT64_SAFE = 1 << 62

_numba_mod = None
_numba_failed = False


def _numba_kernel():
    global _numba_mod, _numba_failed
    if _numba_mod is None and not _numba_failed:
        try:
            from . import _kernel_numba

            _numba_mod = _kernel_numba
        except ImportError:
            _numba_failed = True
    return _numba_mod


def numba_enabled() -> bool:
    if os.environ.get("ORISTAR_NO_NUMBA"):
        return False
    return _numba_kernel() is not None


def backend_name() -> str:
    return "numba" if numba_enabled() else "python"


@dataclass
class GraphMasks:
    """Adjacency of one graph in every form a kernel wants."""

    n: int
    out_mask: tuple[int, ...]
    in_mask: tuple[int, ...]
    und_mask: tuple[int, ...]
    _words: np.ndarray | None = field(default=None, repr=False)
    _out_adj: np.ndarray | None = field(default=None, repr=False)
    _und_adj: np.ndarray | None = field(default=None, repr=False)

    @property
    def n_words(self) -> int:
        return (self.n + 63) // 64

    def und_words(self) -> np.ndarray:
        if self._words is None:
            w = self.n_words
            arr = np.zeros((self.n, w), np.uint64)
            for v, mask in enumerate(self.und_mask):
                for j in range(w):
                    arr[v, j] = (mask >> (64 * j)) & 0xFFFFFFFFFFFFFFFF
            self._words = arr
        return self._words

    def adj_matrices(self) -> tuple[np.ndarray, np.ndarray]:
        if self._out_adj is None:
            out = np.zeros((self.n, self.n), np.uint8)
            und = np.zeros((self.n, self.n), np.uint8)
            for v, mask in enumerate(self.out_mask):
                scan = mask
                while scan:
                    low = scan & -scan
                    u = low.bit_length() - 1
                    scan ^= low
                    out[v, u] = 1
                    und[v, u] = 1
                    und[u, v] = 1
            self._out_adj = out
            self._und_adj = und
        return self._out_adj, self._und_adj


_mask_cache: "weakref.WeakKeyDictionary[OrientedGraph, GraphMasks]" = weakref.WeakKeyDictionary()


def graph_masks(G: OrientedGraph) -> GraphMasks:
    cached = _mask_cache.get(G)
    if cached is not None:
        return cached
    out = [0] * G.n
    inn = [0] * G.n
    for u, v in G.arcs:
        out[u] |= 1 << v
        inn[v] |= 1 << u
    masks = GraphMasks(
        n=G.n,
        out_mask=tuple(out),
        in_mask=tuple(inn),
        und_mask=tuple(o | i for o, i in zip(out, inn)),
    )
    _mask_cache[G] = masks
    return masks


def mask_to_words(mask: int, n_words: int) -> np.ndarray:
    arr = np.zeros(n_words, np.uint64)
    for j in range(n_words):
        arr[j] = (mask >> (64 * j)) & 0xFFFFFFFFFFFFFFFF
    return arr


_comb_cache: dict[tuple[int, int], np.ndarray] = {}


def _comb_table(rows: int, cols: int) -> np.ndarray:
    # Entries the recursion can actually evaluate are bounded by the
    # guarded call bound; anything larger is clipped storage, never read.
    cached = _comb_cache.get((rows, cols))
    if cached is not None:
        return cached
    table = np.empty((rows + 1, cols + 1), np.int64)
    for x in range(rows + 1):
        for j in range(cols + 1):
            table[x, j] = min(comb(x, j), _INT64_SAFE)
    _comb_cache[(rows, cols)] = table
    return table


def count_pairs(masks: GraphMasks, pool_a: int, pool_b: int, ka: int, kb: int) -> int:
    """Independent (ka, kb)-pair count; exact regardless of backend."""
    if ka < 0 or kb < 0:
        return 0
    ca = pool_a.bit_count()
    cb = pool_b.bit_count()
    if ka > ca or kb > cb:
        return 0
    if numba_enabled():
        bound = comb(ca, ka) * comb(cb, kb)
        if bound < _INT64_SAFE:
            mod = _numba_kernel()
            w = masks.n_words
            table = _comb_table(masks.n, max(ka, kb))
            return int(
                mod.count_pairs_words(
                    masks.und_words(),
                    mask_to_words(pool_a, w),
                    mask_to_words(pool_b, w),
                    ka,
                    kb,
                    table,
                )
            )
    from . import _kernel_py

    return _kernel_py.count_pairs(masks.und_mask, pool_a, pool_b, ka, kb)


def mc_hits(masks: GraphMasks, samples: np.ndarray, k: int, l: int) -> int:
    """Rows of `samples` that realize an induced star, roles by column."""
    out_adj, und_adj = masks.adj_matrices()
    if numba_enabled():
        mod = _numba_kernel()
        return int(mod.mc_hits(out_adj, und_adj, samples, k, l))
    m = k + l
    c = samples[:, 0]
    ok = np.ones(samples.shape[0], bool)
    out_b = out_adj.view(bool)
    und_b = und_adj.view(bool)
    for j in range(1, k + 1):
        ok &= out_b[c, samples[:, j]]
    for j in range(k + 1, m + 1):
        ok &= out_b[samples[:, j], c]
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            va = samples[:, a]
            vb = samples[:, b]
            ok &= (va != vb) & ~und_b[va, vb]
    return int(np.count_nonzero(ok))
