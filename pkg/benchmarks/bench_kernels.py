"""Benchmark the accelerated counting kernels against the pure fallback.

Times exact star counting and Monte-Carlo hit testing on two inputs: a
balanced three-class construction (structured, kernel-friendly) and a
uniformly random oriented graph (irregular).  The fallback is selected
per call through the ORISTAR_NO_NUMBA environment flag, so both paths
run in one process and must return identical counts.

Usage: python3 benchmarks/bench_kernels.py [--n 140] [--samples 2000000]
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np

from oristar import kernels
from oristar.construct import ConstructionParams, build_construction
from oristar.density import count_fast, monte_carlo_s
from oristar.digraph import OrientedGraph, StarSpec, build_graph
from oristar.optimize import solve_opt


def _random_graph(seed: int, n: int) -> OrientedGraph:
    rng = np.random.default_rng(seed)
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            t = rng.integers(0, 3)
            if t == 1:
                arcs.append((u, v))
            elif t == 2:
                arcs.append((v, u))
    return build_graph(n, arcs)


def _timed(fn, repeat: int):
    best = float("inf")
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return value, best


def _both_paths(label: str, fn, repeat: int):
    """Run fn on the active backend and again with the fallback forced."""
    assert "ORISTAR_NO_NUMBA" not in os.environ
    fast_val, fast_t = _timed(fn, repeat)
    os.environ["ORISTAR_NO_NUMBA"] = "1"
    try:
        slow_val, slow_t = _timed(fn, repeat)
    finally:
        del os.environ["ORISTAR_NO_NUMBA"]
    assert fast_val == slow_val, f"{label}: backend results differ"
    speedup = slow_t / fast_t if fast_t > 0 else float("inf")
    print(f"{label:<44} {fast_t:>9.4f}s {slow_t:>9.4f}s {speedup:>7.1f}x")
    return fast_t, slow_t


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=140, help="construction order")
    ap.add_argument("--random-n", type=int, default=60, help="random graph order")
    ap.add_argument("--samples", type=int, default=2_000_000, help="MC sample count")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3, help="timing repeats, best-of")
    args = ap.parse_args()

    sp = StarSpec(4, 2)
    r = solve_opt(sp, tol=1e-12)
    G_con = build_construction(
        ConstructionParams(spec=sp, n=args.n, alpha=r.alpha_star, d=r.d_star)
    )
    G_rnd = _random_graph(args.seed, args.random_n)

    if not kernels.numba_enabled():
        print("note: accelerated backend unavailable; both columns use the fallback")
    print(f"{'benchmark':<44} {'fast':>10} {'fallback':>10} {'speedup':>8}")

    # one warm-up call so jit compilation is not billed to the first row
    count_fast(G_con, sp)
    monte_carlo_s(G_rnd, sp, samples=1000, seed=args.seed)

    _both_paths(
        f"count_fast, construction n={args.n} (4,2)",
        lambda: count_fast(G_con, sp),
        args.repeat,
    )
    _both_paths(
        f"count_fast, random n={args.random_n} (4,2)",
        lambda: count_fast(G_rnd, sp),
        args.repeat,
    )
    _both_paths(
        f"monte_carlo_s, {args.samples:.0e} samples, n={args.random_n}",
        lambda: monte_carlo_s(G_rnd, sp, samples=args.samples, seed=args.seed).estimate,
        args.repeat,
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
