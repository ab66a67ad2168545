"""Graph values, profiles, and structural transformations."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from oristar.density import _subset_is_star, count_fast
from oristar.digraph import (
    OrientedGraph,
    StarRole,
    StarSpec,
    blow_up,
    build_graph,
    clone_replace,
    format_graph,
    induced_star_check,
    parse_graph,
    profile,
)
from oristar.errors import (
    Digon,
    DuplicateArc,
    EllZero,
    IdOutOfRange,
    LoopArc,
    ParseError,
    SameVertex,
    WrongCardinality,
)

S21 = build_graph(4, [(0, 1), (0, 2), (3, 0)])
SINGLE_ARC = build_graph(2, [(0, 1)])
TRIANGLE = build_graph(3, [(0, 1), (1, 2), (2, 0)])
FOUR_CYCLE = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def _random_graph(rng: random.Random, n: int) -> OrientedGraph:
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            t = rng.randrange(3)
            if t == 1:
                arcs.append((u, v))
            elif t == 2:
                arcs.append((v, u))
    return build_graph(n, arcs)


def test_build_graph_smallest_cases():
    assert SINGLE_ARC.n == 2 and SINGLE_ARC.arcs == frozenset({(0, 1)})
    assert S21.n == 4 and len(S21.arcs) == 3
    assert S21.out_neighbors(0) == frozenset({1, 2})
    assert S21.in_neighbors(0) == frozenset({3})


def test_build_graph_rejections():
    try:
        build_graph(3, [(0, 1), (1, 0)])
        raise AssertionError("digon accepted")
    except Digon:
        pass
    try:
        build_graph(3, [(1, 1)])
        raise AssertionError("loop accepted")
    except LoopArc:
        pass
    try:
        build_graph(3, [(0, 3)])
        raise AssertionError("out-of-range id accepted")
    except IdOutOfRange:
        pass
    try:
        build_graph(3, [(0, 1), (0, 1)])
        raise AssertionError("duplicate arc accepted")
    except DuplicateArc:
        pass


def test_starspec_normalization_and_constants():
    sp = StarSpec(1, 2)  # reversal normalization swaps to (2, 1)
    assert (sp.k, sp.l, sp.m) == (2, 1, 3)
    assert sp.lambda0 == Fraction(4, 27)
    assert sp.lambda1 == Fraction(1)  # 0^0 = 1 inside (l-1)^(l-1)
    assert sp.prefactor == 12
    sp33 = StarSpec(3, 3)
    assert sp33.lambda0 == Fraction(1, 64)
    assert sp33.prefactor == 140
    try:
        StarSpec(3, 0)
        raise AssertionError("l = 0 accepted")
    except EllZero:
        pass


def test_profile_examples():
    p = profile(S21, 0, range(4))
    assert p.rho_plus == Fraction(1, 2)
    assert p.rho_minus == Fraction(1, 4)
    assert p.rho_zero == Fraction(1, 4)
    p = profile(SINGLE_ARC, 0, range(2))
    assert p.rho_plus == Fraction(1, 2) and p.rho_minus == 0
    p = profile(S21, 2, [])
    assert p.rho_plus == p.rho_minus == p.rho == p.rho_zero == 0
    try:
        profile(S21, 9, range(4))
        raise AssertionError("bad vertex accepted")
    except IdOutOfRange:
        pass


def test_profile_sums_exactly():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(2, 10)
        G = _random_graph(rng, n)
        A = [v for v in range(n) if rng.random() < 0.6]
        mu = Fraction(len(A), n)
        for v in range(n):
            p = profile(G, v, A)
            assert p.rho_plus + p.rho_minus == p.rho
            # v itself falls in the zero class whenever v is in A
            assert p.rho_plus + p.rho_minus + p.rho_zero == mu


def test_blow_up_examples():
    H = blow_up(SINGLE_ARC, 2)
    assert H.n == 4 and len(H.arcs) == 4
    # classes {0,1} and {2,3} stay independent
    assert not H.adjacent(0, 1) and not H.adjacent(2, 3)
    assert blow_up(S21, 1).arcs == S21.arcs
    H3 = blow_up(S21, 3)
    assert H3.n == 12 and len(H3.arcs) == 27


def test_blow_up_composition_counts():
    rng = random.Random(5)
    for _ in range(10):
        G = _random_graph(rng, 3)
        a, b = rng.choice([(2, 2), (2, 3), (3, 2)])
        lhs = blow_up(blow_up(G, a), b)
        rhs = blow_up(G, a * b)
        for spec in (StarSpec(1, 1), StarSpec(2, 1), StarSpec(2, 2)):
            if spec.m + 1 <= 3 * a * b:
                assert count_fast(lhs, spec) == count_fast(rhs, spec)


def test_clone_replace_examples():
    H = clone_replace(SINGLE_ARC, 0, 1)
    assert H.n == 2 and H.arcs == frozenset()
    H = clone_replace(S21, 1, 3)  # clone the out-leaf over the in-leaf
    assert H.sorted_arcs() == [(0, 1), (0, 2), (0, 3)]
    assert count_fast(H, StarSpec(2, 1)) == 0
    # cloning over a twin reproduces the graph
    G = build_graph(3, [(0, 2), (1, 2)])
    assert clone_replace(G, 0, 1).arcs == G.arcs
    try:
        clone_replace(S21, 2, 2)
        raise AssertionError("u = v accepted")
    except SameVertex:
        pass


def test_induced_star_check_examples():
    roles = [
        (0, StarRole.CENTER),
        (1, StarRole.OUT_LEAF),
        (2, StarRole.OUT_LEAF),
        (3, StarRole.IN_LEAF),
    ]
    assert induced_star_check(S21, roles, StarSpec(2, 1))
    sp11 = StarSpec(1, 1)
    for a, b, c in itertools.permutations(range(3)):
        S = [(a, StarRole.CENTER), (b, StarRole.OUT_LEAF), (c, StarRole.IN_LEAF)]
        assert not induced_star_check(TRIANGLE, S, sp11)
    S = [(1, StarRole.CENTER), (2, StarRole.OUT_LEAF), (0, StarRole.IN_LEAF)]
    assert induced_star_check(FOUR_CYCLE, S, sp11)
    try:
        induced_star_check(S21, roles[:3], StarSpec(2, 1))
        raise AssertionError("short assignment accepted")
    except WrongCardinality:
        pass


def test_reversal_symmetry_of_counts():
    # counting (k, l) in G must match a role-swapped count in the reversal
    rng = random.Random(23)
    for _ in range(25):
        n = rng.randint(4, 10)
        G = _random_graph(rng, n)
        R = G.reverse()
        for spec in (StarSpec(2, 1), StarSpec(2, 2), StarSpec(3, 1), StarSpec(3, 2)):
            if n < spec.m + 1:
                continue
            swapped = sum(
                _subset_is_star(R, sub, spec.l, spec.k)
                for sub in itertools.combinations(range(n), spec.m + 1)
            )
            assert count_fast(G, spec) == swapped


def test_text_format_round_trip():
    text = format_graph(S21)
    assert text.splitlines()[0] == "dg 4"
    assert parse_graph(text).arcs == S21.arcs
    G = parse_graph("# comment\ndg 3\n0 1\n# another\n2 1\n")
    assert G.arcs == frozenset({(0, 1), (2, 1)})
    for bad in ("dg 2\n0 1\n0 1\n", "dg 2\n0 1\n1 0\n", "dg x\n", "0 1\n"):
        try:
            parse_graph(bad)
            raise AssertionError(f"malformed input accepted: {bad!r}")
        except ParseError:
            pass
