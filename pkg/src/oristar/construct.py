"""Near-extremal oriented graphs on three classes X, Y1, Y2.

The graph is complete bipartite between X and Y = Y1 u Y2 with both
sides independent.  Every X-Y2 arc points into Y2; each X-Y1 pair is
oriented toward Y1 with probability l/(m-1) (random mode) or with an
exact per-vertex quota laid out in a rotating pattern (balanced mode).
For k = l there is a single class Y and the coin is fair.

Class sizes: |X| = round(alpha n) and, for k > l,
|Y1| = round(((m-1)/(k-1)) (1-d) (1-alpha) n), remainder to Y2.
Rounding is half-up, so ties enlarge X.  The rotating pattern is one
concrete deterministic choice among the orientations with exact degree
quotas; any of them would do, but determinism keeps counts reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import floor

import numpy as np

from .digraph import Arc, OrientedGraph, StarSpec, build_graph
from .errors import InfeasibleSizes

Mode = str  # "random" | "balanced"


def _round_half_up(x: float) -> int:
    return floor(x + 0.5)


@dataclass(frozen=True)
class ConstructionParams:
    spec: StarSpec
    n: int
    alpha: float
    d: float = 0.0  # ignored for k = l
    mode: Mode = "balanced"
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("random", "balanced"):
            raise InfeasibleSizes(f"unknown mode {self.mode!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise InfeasibleSizes(f"alpha = {self.alpha!r} outside [0, 1]")
        k, l, m = self.spec.k, self.spec.l, self.spec.m
        if k > l:
            if not 0.0 <= self.d <= 1.0:
                raise InfeasibleSizes(f"d = {self.d!r} outside [0, 1]")
            if (m - 1) * (1.0 - self.d) > (k - 1):
                raise InfeasibleSizes(
                    f"(m-1)(1-d)/(k-1) = {(m - 1) * (1.0 - self.d) / (k - 1)!r} > 1"
                )
        nx, ny1, ny2 = self.sizes
        if min(nx, ny1, ny2) < 0:
            raise InfeasibleSizes(f"rounded sizes ({nx}, {ny1}, {ny2}) go negative")

    @property
    def sizes(self) -> tuple[int, int, int]:
        """(|X|, |Y1|, |Y2|); for k = l the whole of Y sits in the Y1 slot."""
        k, m, n = self.spec.k, self.spec.m, self.n
        nx = _round_half_up(self.alpha * n)
        if self.spec.k == self.spec.l:
            return nx, n - nx, 0
        ny1 = _round_half_up((m - 1) / (k - 1) * (1.0 - self.d) * (1.0 - self.alpha) * n)
        return nx, ny1, n - nx - ny1


def _toward_quota(p: ConstructionParams, ny1: int) -> int:
    """Arcs each X-vertex sends into Y1 in balanced mode."""
    spec = p.spec
    if spec.k == spec.l:
        return _round_half_up(ny1 / 2.0)
    return _round_half_up(spec.l * ny1 / (spec.m - 1))


def build_construction(p: ConstructionParams) -> OrientedGraph:
    """Materialize the graph; vertices 0..|X|-1 are X, then Y1, then Y2."""
    spec, n = p.spec, p.n
    if n < spec.m + 1:
        raise InfeasibleSizes(f"n = {n} below m+1 = {spec.m + 1}")
    nx, ny1, ny2 = p.sizes
    y1_base = nx
    y2_base = nx + ny1
    arcs: list[Arc] = []
    for x in range(nx):
        for y in range(y2_base, n):
            arcs.append((x, y))
    if p.mode == "balanced":
        r = _toward_quota(p, ny1)
        for i in range(nx):
            fwd = {(i * r + j) % ny1 for j in range(r)} if ny1 else set()
            for t in range(ny1):
                if t in fwd:
                    arcs.append((i, y1_base + t))
                else:
                    arcs.append((y1_base + t, i))
    else:
        prob = 0.5 if spec.k == spec.l else spec.l / (spec.m - 1)
        rng = np.random.default_rng(p.seed)
        coin = rng.random((nx, ny1)) < prob
        for i in range(nx):
            for t in range(ny1):
                if coin[i, t]:
                    arcs.append((i, y1_base + t))
                else:
                    arcs.append((y1_base + t, i))
    return build_graph(n, arcs)


def predict_s(p: ConstructionParams) -> float:
    """Limit density of the construction as n grows, at these (alpha, d).

    Reimplements the closed form on purpose so it can cross-check the
    optimizer's objective rather than share its code.
    """
    k, l, m = p.spec.k, p.spec.l, p.spec.m
    a = p.alpha
    if k == l:
        return (a * (1.0 - a) ** (2 * k) + (1.0 - a) * a ** (2 * k)) / 4.0**k
    d = p.d
    center_x = a * (1.0 - a) ** m * d**k * (1.0 - d) ** l
    coeff = (k - 1) ** (k - 1) * l**l / (m - 1) ** (m - 1)
    center_y1 = coeff * (1.0 - a) * a**m * (1.0 - d)
    return center_x + center_y1


def optimal_construction(
    spec: StarSpec, n: int, mode: Mode = "balanced", seed: int = 0, tol: float = 1e-12
) -> OrientedGraph:
    """Solve for the best (alpha, d), round sizes, build."""
    from .optimize import solve_opt

    r = solve_opt(spec, tol)
    d = r.d_star if r.d_star is not None else 0.0
    return build_construction(
        ConstructionParams(spec=spec, n=n, alpha=r.alpha_star, d=d, mode=mode, seed=seed)
    )
