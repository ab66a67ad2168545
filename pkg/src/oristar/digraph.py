"""Oriented graphs, star parameters, and the structural transformations.

An oriented graph is a digraph with no loops and no digons: for every
unordered pair {u, v} at most one of the arcs (u, v), (v, u) exists, so
"adjacent" is unambiguous and the neighborhood of a vertex splits cleanly
into out- and in-neighbors.

The star S_{k,l} is the (k+l+1)-vertex digraph whose center has out-degree
k and in-degree l and whose leaves are pairwise non-adjacent.  Reversing
all arcs swaps the roles of k and l without changing any induced count, so
the canonical parameter order is k >= l; StarSpec applies that swap at
construction.  Alongside k, l, m = k+l it carries the two rate constants

    lambda0 = k^k l^l / m^m,
    lambda1 = k^k l (l-1)^(l-1) / (m-1)^(m-1)      (0^0 = 1),

and the factor (m+1)!/(k! l!) that converts the map-probability density
s(G) into the induced density i(S_{k,l}, G) asymptotically.

All proportions here are exact `fractions.Fraction` values; nothing in
this module touches floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Sequence

from .errors import (
    Digon,
    DomainError,
    DuplicateArc,
    EllZero,
    IdOutOfRange,
    LoopArc,
    ParseError,
    SameVertex,
    WrongCardinality,
)

Arc = tuple[int, int]


class StarRole(enum.Enum):
    """The three positions a vertex can occupy in an oriented star."""

    CENTER = "c"
    IN_LEAF = "i"
    OUT_LEAF = "o"


@dataclass(frozen=True)
class OrientedGraph:
    """Immutable oriented graph on vertices 0..n-1.

    Construct through `build_graph`, which performs the loop / digon /
    range validation; the dataclass itself assumes clean input.
    """

    n: int
    arcs: frozenset[Arc]

    @cached_property
    def _out(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].add(v)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def _in(self) -> tuple[frozenset[int], ...]:
        inn: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            inn[v].add(u)
        return tuple(frozenset(s) for s in inn)

    def out_neighbors(self, v: int) -> frozenset[int]:
        return self._out[v]

    def in_neighbors(self, v: int) -> frozenset[int]:
        return self._in[v]

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def adjacent(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs or (v, u) in self.arcs

    def reverse(self) -> "OrientedGraph":
        return OrientedGraph(self.n, frozenset((v, u) for u, v in self.arcs))

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)


@dataclass(frozen=True)
class StarSpec:
    """The pair (k, l) with its derived constants, normalized to k >= l.

    l = 0 is rejected: directed stars have extremal constructions of a
    different kind and none of the bounds here cover them.
    """

    k: int
    l: int

    def __init__(self, k: int, l: int):
        if not (isinstance(k, int) and isinstance(l, int)) or k < 0 or l < 0:
            raise DomainError("(k, l)", (k, l), "pairs of non-negative integers")
        if k < l:
            k, l = l, k
        if l == 0:
            raise EllZero(k, l)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", l)

    @property
    def m(self) -> int:
        return self.k + self.l

    @property
    def lambda0(self) -> Fraction:
        k, l, m = self.k, self.l, self.m
        return Fraction(k**k * l**l, m**m)

    @property
    def lambda1(self) -> Fraction:
        k, l, m = self.k, self.l, self.m
        # 0^0 = 1 makes the l = 1 case come out right.
        return Fraction(k**k * l * (l - 1) ** (l - 1), (m - 1) ** (m - 1))

    @property
    def prefactor(self) -> int:
        return factorial(self.m + 1) // (factorial(self.k) * factorial(self.l))


@dataclass(frozen=True)
class VertexProfile:
    """Neighborhood proportions of one vertex relative to a subset A.

    rho_plus, rho_minus, rho, rho_zero are |N+_A(v)|/n, |N-_A(v)|/n,
    their sum, and mu(A) - rho; all exact.
    """

    rho_plus: Fraction
    rho_minus: Fraction
    rho: Fraction
    rho_zero: Fraction

    @property
    def mu(self) -> Fraction:
        return self.rho + self.rho_zero


def build_graph(n: int, arcs: Iterable[Arc]) -> OrientedGraph:
    """Validate and freeze an oriented graph.

    Rejects loops, duplicate arcs, digons, and ids outside [0, n).
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError("n", n, "integers >= 1")
    seen: set[Arc] = set()
    for u, v in arcs:
        if not (0 <= u < n):
            raise IdOutOfRange(u, n)
        if not (0 <= v < n):
            raise IdOutOfRange(v, n)
        if u == v:
            raise LoopArc(u)
        if (u, v) in seen:
            raise DuplicateArc(u, v)
        if (v, u) in seen:
            raise Digon(v, u)
        seen.add((u, v))
    return OrientedGraph(n, frozenset(seen))


def profile(G: OrientedGraph, v: int, A: Iterable[int]) -> VertexProfile:
    """Exact neighborhood proportions of v within the subset A."""
    if not (0 <= v < G.n):
        raise IdOutOfRange(v, G.n)
    members = set()
    for a in A:
        if not (0 <= a < G.n):
            raise IdOutOfRange(a, G.n)
        members.add(a)
    n = G.n
    plus = len(G.out_neighbors(v) & members)
    minus = len(G.in_neighbors(v) & members)
    mu_cnt = len(members)
    # rho_zero is mu(A) - rho by definition, so v itself counts as one of
    # the non-adjacent vertices whenever it lies in A.
    return VertexProfile(
        rho_plus=Fraction(plus, n),
        rho_minus=Fraction(minus, n),
        rho=Fraction(plus + minus, n),
        rho_zero=Fraction(mu_cnt - plus - minus, n),
    )


def blow_up(G: OrientedGraph, t: int) -> OrientedGraph:
    """Replace each vertex by an independent t-class, arcs inherited classwise.

    Vertex v becomes the class {v*t, ..., v*t + t - 1}, so blowing up by a
    and then by b gives literally the same graph as blowing up by a*b.
    """
    if not isinstance(t, int) or t < 1:
        raise DomainError("t", t, "integers >= 1")
    if t == 1:
        return G
    arcs = frozenset(
        (u * t + i, v * t + j) for u, v in G.arcs for i in range(t) for j in range(t)
    )
    return OrientedGraph(G.n * t, arcs)


def clone_replace(G: OrientedGraph, u: int, v: int) -> OrientedGraph:
    """Delete v and add a non-adjacent clone of u (same in/out-neighbors in G - v).

    The clone reuses the id v, keeping the vertex count and all other ids
    fixed.  The clone and u are non-adjacent, as in the averaging argument
    this transformation comes from.
    """
    if not (0 <= u < G.n):
        raise IdOutOfRange(u, G.n)
    if not (0 <= v < G.n):
        raise IdOutOfRange(v, G.n)
    if u == v:
        raise SameVertex(u)
    arcs = {(a, b) for a, b in G.arcs if v not in (a, b)}
    arcs.update((v, w) for w in G.out_neighbors(u) if w != v)
    arcs.update((w, v) for w in G.in_neighbors(u) if w != v)
    return OrientedGraph(G.n, frozenset(arcs))


def induced_star_check(
    G: OrientedGraph, S: Sequence[tuple[int, StarRole]], spec: StarSpec
) -> bool:
    """True iff S induces exactly S_{k,l} with the given role assignment.

    S lists (vertex, role) pairs: one center, k out-leaves, l in-leaves.
    The induced condition is that the center-leaf arcs point the right way
    and that no other adjacency exists among the m+1 vertices.
    """
    want = spec.m + 1
    if len(S) != want:
        raise WrongCardinality(f"role assignment covers {len(S)} vertices, star needs {want}")
    verts = [x for x, _ in S]
    if len(set(verts)) != want:
        raise WrongCardinality("role assignment repeats a vertex")
    for x in verts:
        if not (0 <= x < G.n):
            raise IdOutOfRange(x, G.n)
    centers = [x for x, r in S if r is StarRole.CENTER]
    outs = [x for x, r in S if r is StarRole.OUT_LEAF]
    ins = [x for x, r in S if r is StarRole.IN_LEAF]
    if len(centers) != 1 or len(outs) != spec.k or len(ins) != spec.l:
        raise WrongCardinality(
            f"roles give (center, out, in) counts ({len(centers)}, {len(outs)}, {len(ins)}), "
            f"star needs (1, {spec.k}, {spec.l})"
        )
    c = centers[0]
    if any(not G.has_arc(c, o) for o in outs):
        return False
    if any(not G.has_arc(i, c) for i in ins):
        return False
    leaves = outs + ins
    for a in range(len(leaves)):
        for b in range(a + 1, len(leaves)):
            if G.adjacent(leaves[a], leaves[b]):
                return False
    return True


def parse_graph(text: str) -> OrientedGraph:
    """Parse the graph text format.

    First non-comment line is `dg <n>`; every following non-comment line is
    `<u> <v>` for the arc u -> v.  `#` starts a comment line.  Duplicate or
    digon lines are a parse error, as are loops and out-of-range ids.
    """
    n: int | None = None
    arcs: list[Arc] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "dg":
                raise ParseError(line_no, f"expected header 'dg <n>', got {line!r}")
            try:
                n = int(tokens[1])
            except ValueError:
                raise ParseError(line_no, f"bad vertex count {tokens[1]!r}") from None
            if n < 1:
                raise ParseError(line_no, f"vertex count must be >= 1, got {n}")
            continue
        if len(tokens) != 2:
            raise ParseError(line_no, f"expected '<u> <v>', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(line_no, f"non-integer arc endpoints in {line!r}") from None
        arcs.append((u, v))
    if n is None:
        raise ParseError(0, "missing 'dg <n>' header")
    try:
        return build_graph(n, arcs)
    except (LoopArc, Digon, DuplicateArc, IdOutOfRange) as exc:
        raise ParseError(0, str(exc)) from exc


def format_graph(G: OrientedGraph) -> str:
    """Serialize to the text format, arcs in sorted order (bit-exact)."""
    lines = [f"dg {G.n}"]
    lines.extend(f"{u} {v}" for u, v in G.sorted_arcs())
    return "\n".join(lines) + "\n"
