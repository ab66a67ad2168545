"""Inequality checks on concrete graphs and self-contained arithmetic sweeps.

Everything here is diagnostic: the degree bound and the swept
inequalities are universally valid, so any reported violation points at
an implementation bug rather than at the input graph.  The partition
statistics and the stability report merely measure a graph against the
shape the extremal examples have; they never certify anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, e, sqrt

import numpy as np

from . import kernels
from .density import natural_partition, vertex_density
from .digraph import OrientedGraph, StarSpec, build_graph, profile
from .errors import RangeError, WrongBranch
from .optimize import f_majorant, lin_coeff, solve_opt

S_EXACT_CAP = 200
SWEEP_LO, SWEEP_HI = 6, 64


@dataclass(frozen=True)
class PartitionStats:
    """The nine bipartition parameters; None marks a side too empty to
    support the corresponding min/max."""

    alpha: Fraction
    beta: Fraction | None
    gamma: Fraction | None
    D: Fraction | None
    S: Fraction | float
    S1: Fraction | None
    S2: Fraction | None
    d: Fraction | None
    d0: Fraction
    s_is_exact: bool
    s_radius: float | None


@dataclass(frozen=True)
class SweepReport:
    lo: int
    hi: int
    checks: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class StabilityReport:
    epsilon: float
    partition: tuple[frozenset[int], frozenset[int], frozenset[int]]
    condition_deltas: tuple[float, float, float, float, float, float]
    violating_counts: tuple[int, int, int]


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    checks: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_degree_bound(
    G: OrientedGraph, spec: StarSpec
) -> list[tuple[int, Fraction, Fraction]]:
    """Vertices violating s(v) <= (lam0 rho^m + lam1 rho (1-rho)^(m-1))/(m+1).

    The bound holds for every graph, so the returned list is expected
    empty; entries are (vertex, s_v, bound).
    """
    masks = kernels.graph_masks(G)
    m = spec.m
    out = []
    for v in range(G.n):
        rho = Fraction(masks.und_mask[v].bit_count(), G.n)
        bound = (
            spec.lambda0 * rho**m + spec.lambda1 * rho * (1 - rho) ** (m - 1)
        ) / (m + 1)
        s_v = vertex_density(G, v, spec).s_v
        if s_v > bound:
            out.append((v, s_v, bound))
    return out


def _exact_min_s(G: OrientedGraph, spec: StarSpec) -> Fraction:
    return min(vertex_density(G, v, spec).s_v for v in range(G.n))


def _mc_min_s(
    G: OrientedGraph, spec: StarSpec, seed: int, samples: int
) -> tuple[float, float]:
    """Min over v of an unbiased s(v) estimate: condition on a uniformly
    chosen star slot landing on v, draw the other m images uniformly."""
    masks = kernels.graph_masks(G)
    k, l, m = spec.k, spec.l, spec.m
    streams = np.random.SeedSequence(seed).spawn(G.n)
    best = (float("inf"), 0.0)
    for v in range(G.n):
        rng = np.random.default_rng(streams[v])
        rows = rng.integers(0, G.n, size=(samples, m + 1))
        role = rng.integers(0, m + 1, size=samples)
        rows[role == 0, 0] = v
        rows[(role >= 1) & (role <= k), 1] = v
        rows[role > k, k + 1] = v
        p = kernels.mc_hits(masks, rows, k, l) / samples
        if p < best[0]:
            best = (p, sqrt(p * (1.0 - p) / samples))
    return best


def partition_stats(
    G: OrientedGraph,
    spec: StarSpec,
    X: frozenset[int] | None = None,
    seed: int = 0,
    samples_per_vertex: int = 1 << 14,
) -> PartitionStats:
    if X is None:
        X = natural_partition(G)
    else:
        X = frozenset(X)
    n, m = G.n, spec.m
    Y = frozenset(range(n)) - X
    alpha = Fraction(len(X), n)

    masks = kernels.graph_masks(G)
    beta = max((profile(G, y, Y).rho for y in Y), default=None) if Y else None
    gamma = D = S1 = S2 = d = None
    if X:
        xprofs = {x: profile(G, x, Y) for x in X}
        gamma = min(p.rho_minus for p in xprofs.values())
        D = min(Fraction(masks.und_mask[x].bit_count(), n) for x in X)
        S1 = min(p.rho_plus**spec.k * p.rho_minus**spec.l for p in xprofs.values())
        if beta is not None and D is not None:
            S2 = S1 - Fraction(m - 1, (m + 1) * comb(m, spec.k)) * (alpha + beta) * (
                1 - alpha
            ) * (1 - D) ** (m - 2)
        if Y:
            arcs_y_to_x = sum(
                1 for u, v in G.arcs if u in Y and v in X
            )
            d = 1 - Fraction(arcs_y_to_x, len(X) * len(Y))

    nonadj = 0
    for x in X:
        px = profile(G, x, Y)
        nonadj += int(px.rho_zero * n)  # count of Y vertices non-adjacent to x
    d0 = Fraction(nonadj, n**2) if X else Fraction(0)

    if n <= S_EXACT_CAP:
        s_min = _exact_min_s(G, spec)
        S: Fraction | float = (m + 1) * s_min
        s_is_exact, s_radius = True, None
    else:
        p, se = _mc_min_s(G, spec, seed, samples_per_vertex)
        S = (m + 1) * p
        s_is_exact, s_radius = False, (m + 1) * 5.0 * se
    return PartitionStats(
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        D=D,
        S=S,
        S1=S1,
        S2=S2,
        d=d,
        d0=d0,
        s_is_exact=s_is_exact,
        s_radius=s_radius,
    )


def a8_value(m: int) -> Fraction:
    return Fraction((m + 1) ** 2, m * (m - 1)) + Fraction(
        (m + 1) * (m - 1) ** (m - 2), m**m
    )


def _exact_objective_at_anchor(k: int, l: int) -> tuple[Fraction, Fraction]:
    """(floor, (m+1) * objective) at alpha = 1/(m+1), d = k/m, in exact
    arithmetic for either branch."""
    m = k + l
    a = Fraction(1, m + 1)
    floor = Fraction(k**k * l**l, (m + 1) ** m)
    if k == l:
        val = (a * (1 - a) ** m + (1 - a) * a**m) / Fraction(4) ** k
    else:
        dd = Fraction(k, m)
        val = a * (1 - a) ** m * dd**k * (1 - dd) ** l + Fraction(
            (k - 1) ** (k - 1) * l**l, (m - 1) ** (m - 1)
        ) * (1 - a) * a**m * (1 - dd)
    return floor, (m + 1) * val


def arithmetic_sweeps(lo: int, hi: int) -> SweepReport:
    """Closed-form inequalities in m, checked pointwise over [lo, hi]."""
    if lo < SWEEP_LO or hi > SWEEP_HI or lo > hi:
        raise RangeError(lo, hi)
    failures: list[str] = []
    checks = 0

    def run(name: str, ok: bool):
        nonlocal checks
        checks += 1
        if not ok:
            failures.append(name)

    for m in range(lo, hi + 1):
        run(f"quartic-vs-power m={m}", (m + 1) ** 4 < m**2 * (m - 1) ** (m - 1))
        run(
            f"gamma-floor m={m}",
            Fraction(44, 45) * Fraction(m, m + 1) ** m >= Fraction(1, 3),
        )
        if m == 6:
            run("exp-tail m=6", (e**2 * (m + 1) + e) / 2**m <= 55 / 64)
        if m > lo or m > 6:
            prev = (e**2 * m + e) / 2 ** (m - 1)
            run(f"exp-tail-decreasing m={m}", (e**2 * (m + 1) + e) / 2**m < prev)
        run(f"a8-cap m={m}", a8_value(m) <= Fraction(173, 100))
        for k in range((m + 1) // 2, m):
            l = m - k
            floor, val = _exact_objective_at_anchor(k, l)
            run(f"anchor-floor k={k} l={l}", floor <= val)
    return SweepReport(lo=lo, hi=hi, checks=checks, failures=tuple(failures))


def stability_report(G: OrientedGraph, spec: StarSpec, epsilon: float) -> StabilityReport:
    """Measure the six structural closeness conditions against the
    optimizer's (alpha*, d*); descriptive, no pass/fail."""
    if spec.k == spec.l:
        raise WrongBranch(spec.k, spec.l, "k > l")
    assert epsilon > 0.0
    n, k, l, m = G.n, spec.k, spec.l, spec.m
    r = solve_opt(spec)
    a_star, d_star = r.alpha_star, r.d_star

    X = natural_partition(G)
    Y = frozenset(range(n)) - X
    mu_x = Fraction(len(X), n)
    y2 = frozenset(
        y for y in Y if profile(G, y, X).rho_minus >= mu_x - Fraction(epsilon)
    )
    y1 = Y - y2

    mu_y1 = Fraction(len(y1), n)
    mu_y2 = Fraction(len(y2), n)
    y1_target = (m - 1) / (k - 1) * (1 - d_star) * (1 - a_star)
    y2_target = (1 - (m - 1) / (k - 1) * (1 - d_star)) * (1 - a_star)
    d1 = abs(float(mu_x) - a_star)
    d2 = max(abs(float(mu_y1) - y1_target), abs(float(mu_y2) - y2_target))

    internal = sum(1 for u, v in G.arcs if (u in X) == (v in X))
    d3 = internal / n**2

    v4 = 0
    out_t = d_star * (1 - a_star)
    in_t = (1 - d_star) * (1 - a_star)
    for x in X:
        p = profile(G, x, Y)
        if abs(float(p.rho_plus) - out_t) > epsilon or abs(float(p.rho_minus) - in_t) > epsilon:
            v4 += 1
    v5 = 0
    out_y1 = (k - 1) / (m - 1) * a_star
    in_y1 = l / (m - 1) * a_star
    for y in y1:
        p = profile(G, y, X)
        if abs(float(p.rho_plus) - out_y1) > epsilon or abs(float(p.rho_minus) - in_y1) > epsilon:
            v5 += 1
    v6 = sum(1 for y in y2 if float(profile(G, y, X).rho_minus) < a_star - epsilon)

    return StabilityReport(
        epsilon=epsilon,
        partition=(X, y1, y2),
        condition_deltas=(d1, d2, d3, v4 / n, v5 / n, v6 / n),
        violating_counts=(v4, v5, v6),
    )


def _spec_range(m_lo: int, m_hi: int):
    """All specs with k >= l >= 1 and m_lo <= k + l <= m_hi."""
    for m in range(m_lo, m_hi + 1):
        for k in range((m + 1) // 2, m):
            yield StarSpec(k, m - k)


def degree_bound_suite(graphs: int = 1000, seed: int = 0) -> SuiteReport:
    """check_degree_bound over random trit-uniform graphs, n in [8, 20],
    cycling through every spec with 6 <= m <= 9."""
    rng = np.random.default_rng(seed)
    specs = list(_spec_range(6, 9))
    failures: list[str] = []
    for idx in range(graphs):
        n = int(rng.integers(8, 21))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        trits = rng.integers(0, 3, size=len(pairs))
        arcs = []
        for (u, v), t in zip(pairs, trits):
            if t == 1:
                arcs.append((u, v))
            elif t == 2:
                arcs.append((v, u))
        spec = specs[idx % len(specs)]
        viol = check_degree_bound(build_graph(n, arcs), spec)
        if viol:
            failures.append(
                f"graph {idx} (n={n}, spec ({spec.k},{spec.l})): "
                f"{len(viol)} vertices over the bound"
            )
    return SuiteReport("degree-bound", graphs, tuple(failures))


def lemma_suite(seed: int = 0, samples: int = 100_000) -> SuiteReport:
    """Randomized and grid checks of the scalar inequalities behind the
    upper-bound argument.

    Four families: the weighted power-split bound
    x^a y^b <= (a^a b^b/(a+b)^(a+b))(x+y)^(a+b); the complement-product
    bound (a-x)(b-y) <= ab(1-(x+y)/(a+b)); the majorant's shape
    (non-decreasing, concave, above x^k(1-x)^l); and the location of the
    maximizer of the d-profile
    a(1-a)^m f(d) + c (1-a) a^m (1-d) inside
    [(k-1)/(m-1), k/m] for random a in (0, 1/2].
    """
    rng = np.random.default_rng(seed)
    failures: list[str] = []
    checks = 0

    a = 10.0 * (1.0 - rng.random(samples))
    b = 10.0 * (1.0 - rng.random(samples))
    x = rng.uniform(0.0, 10.0, samples)
    y = rng.uniform(0.0, 10.0, samples)
    lhs = x**a * y**b
    rhs = a**a * b**b / (a + b) ** (a + b) * (x + y) ** (a + b)
    bad = int(np.sum(lhs > rhs * (1.0 + 1e-12) + 1e-300))
    checks += samples
    if bad:
        failures.append(f"power-split inequality: {bad}/{samples} samples")

    a = 10.0 * (1.0 - rng.random(samples))
    b = 10.0 * (1.0 - rng.random(samples))
    x = a * rng.random(samples)
    y = b * rng.random(samples)
    lhs = (a - x) * (b - y)
    rhs = a * b * (1.0 - (x + y) / (a + b))
    bad = int(np.sum(lhs > rhs + 1e-12 * np.abs(rhs) + 1e-12))
    checks += samples
    if bad:
        failures.append(f"complement-product inequality: {bad}/{samples} samples")

    grid = np.linspace(0.0, 1.0, 10_000)
    for spec in _spec_range(6, 12):
        tag = f"({spec.k},{spec.l})"
        f = np.array([f_majorant(float(xx), spec) for xx in grid])
        g = grid**spec.k * (1.0 - grid) ** spec.l
        checks += 3
        if not np.all(np.diff(f) >= -1e-15):
            failures.append(f"majorant not non-decreasing for {tag}")
        if not np.all(f[1:-1] >= (f[:-2] + f[2:]) / 2.0 - 1e-12):
            failures.append(f"majorant not midpoint-concave for {tag}")
        if not np.all(f >= g - 1e-12):
            failures.append(f"majorant below x^k(1-x)^l for {tag}")

        if spec.k > spec.l:
            m = spec.m
            lo = (spec.k - 1) / (m - 1) - 1e-3
            hi = spec.k / m + 1e-3
            c = float(lin_coeff(spec))
            for _ in range(100):
                alpha = 0.5 * (1.0 - rng.random())  # (0, 1/2]
                prof = (
                    alpha * (1.0 - alpha) ** m * f
                    + c * (1.0 - alpha) * alpha**m * (1.0 - grid)
                )
                attained = grid[prof >= prof.max() - 1e-15]
                checks += 1
                if not np.any((attained >= lo) & (attained <= hi)):
                    failures.append(
                        f"d-profile maximum outside window for {tag} alpha={alpha!r}"
                    )
    return SuiteReport("lemmas", checks, tuple(failures))
