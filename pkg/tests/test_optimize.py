"""Objective evaluation, the majorant, the maximizer, and Taylor forms."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from oristar.digraph import StarSpec
from oristar.errors import DomainError, UnsupportedStar, WrongBranch
from oristar.optimize import (
    f_majorant,
    objective_F,
    objective_sym,
    solve_opt,
    taylor_approx,
)


def test_f_majorant_values_and_pieces():
    sp = StarSpec(2, 1)
    assert f_majorant(0.5, sp) == 0.125  # breakpoint (k-1)/(m-1), both pieces agree
    assert abs(f_majorant(1.0, sp) - 4 / 27) < 1e-15  # plateau at lambda0
    assert f_majorant(0.0, sp) == 0.0
    # plateau beyond k/m, raw curve strictly below the extension there
    assert f_majorant(0.9, sp) == f_majorant(2 / 3, sp)
    assert 0.9**2 * 0.1 < f_majorant(0.9, sp)
    # linear piece below the first breakpoint
    x = 0.25
    assert abs(f_majorant(x, sp) - x / 0.5 * 0.125) < 1e-15
    try:
        f_majorant(1.5, sp)
        raise AssertionError("x outside [0, 1] accepted")
    except DomainError:
        pass


def test_objective_f_values():
    sp = StarSpec(2, 1)
    assert abs(objective_F(0.3, 9 / 14, sp) - 0.016875) < 1e-15
    assert objective_F(0.0, 0.4, sp) == 0.0
    assert objective_F(0.3, 1.0, sp) == 0.0
    try:
        objective_F(0.2, 0.5, StarSpec(3, 3))
        raise AssertionError("k = l accepted by the asymmetric branch")
    except WrongBranch:
        pass


def test_objective_f_exact_rational_cross_check():
    # independent exact evaluation of 12 * F(3/10, 9/14)
    a, d = Fraction(3, 10), Fraction(9, 14)
    term1 = a * (1 - a) ** 3 * d**2 * (1 - d)
    term2 = Fraction(1, 4) * (1 - a) * a**3 * (1 - d)
    assert 12 * (term1 + term2) == Fraction(81, 400)
    assert abs(objective_F(0.3, 9 / 14, StarSpec(2, 1)) - float(term1 + term2)) < 1e-15


def test_objective_sym_values():
    sp = StarSpec(3, 3)
    assert objective_sym(0.0, sp) == 0.0
    assert abs(objective_sym(0.5, sp) - 2.0**-12) < 1e-18
    assert objective_sym(1 / 7, sp) > objective_sym(1 / 6, sp)
    try:
        objective_sym(0.3, StarSpec(2, 1))
        raise AssertionError("k > l accepted by the symmetric branch")
    except WrongBranch:
        pass


def test_solve_known_small_case():
    r = solve_opt(StarSpec(2, 1), tol=1e-12)
    assert abs(r.alpha_star - 0.3) < 1e-6
    assert abs(r.d_star - 9 / 14) < 1e-6
    assert abs(r.inducibility - 0.2025) < 1e-9
    assert r.conjectural  # m = 3 < 6
    assert abs(r.opt_value - objective_F(r.alpha_star, r.d_star, StarSpec(2, 1))) < 1e-15
    assert abs(r.inducibility - 12 * r.opt_value) < 1e-15


def test_solve_symmetric_closed_form():
    r = solve_opt(StarSpec(2, 2), tol=1e-12)
    assert abs(r.opt_value - 1 / 192) < 1e-12
    assert abs(r.inducibility - 5 / 32) < 1e-10
    assert abs(r.alpha_star - (3 - math.sqrt(3)) / 6) < 1e-6
    assert r.d_star is None
    assert r.conjectural  # m = 4 < 6


def test_solve_matches_grid_oracle_asymmetric():
    # grid oracle written straight from the formula, not via objective_F
    sp = StarSpec(4, 2)
    k, l, m = sp.k, sp.l, sp.m
    r = solve_opt(sp, tol=1e-12)
    A = np.linspace(0.0, 0.5, 5001)[:, None]  # 1e-4 steps
    D = np.linspace(0.0, 4 / 6, 6668)[None, :]
    coeff = (k - 1) ** (k - 1) * l**l / (m - 1) ** (m - 1)
    vals = A * (1 - A) ** m * D**k * (1 - D) ** l + coeff * (1 - A) * A**m * (1 - D)
    ia, id_ = np.unravel_index(vals.argmax(), vals.shape)
    assert abs(r.alpha_star - A[ia, 0]) < 1e-4
    assert abs(r.d_star - D[0, id_]) < 1e-4
    assert r.opt_value >= vals.max() - 1e-12
    assert not r.conjectural  # m = 6
    assert abs(objective_F(A[70, 0], D[0, 99], sp) - vals[70, 99]) < 1e-17


def test_solve_matches_grid_oracle_symmetric():
    sp = StarSpec(3, 3)
    k = sp.k
    r = solve_opt(sp, tol=1e-12)
    A = np.linspace(0.0, 0.5, 500_001)  # 1e-6 steps
    vals = (A * (1 - A) ** (2 * k) + (1 - A) * A ** (2 * k)) / 4.0**k
    assert abs(r.alpha_star - A[vals.argmax()]) < 1e-6
    assert r.opt_value >= vals.max() - 1e-14
    assert abs(objective_sym(A[5000], sp) - vals[5000]) < 1e-17


def test_solve_errors_and_reversal_normalization():
    try:
        solve_opt(StarSpec(1, 1))
        raise AssertionError("the (1, 1) case has a different extremal family")
    except UnsupportedStar:
        pass
    r = solve_opt(StarSpec(1, 2), tol=1e-12)  # normalizes to (2, 1)
    assert abs(r.inducibility - 0.2025) < 1e-9


def test_solver_consistency_across_specs():
    for k, l in ((2, 1), (3, 1), (3, 2), (4, 2), (5, 1), (3, 3), (6, 3)):
        sp = StarSpec(k, l)
        r = solve_opt(sp, tol=1e-12)
        assert 0.0 <= r.alpha_star <= 0.5
        assert abs(r.inducibility - sp.prefactor * r.opt_value) < 1e-12
        assert r.conjectural == (sp.m < 6)
        # maximum dominates the anchor point (1/(m+1), k/m)
        a0 = 1.0 / (sp.m + 1)
        if k > l:
            assert 0.0 <= r.d_star <= k / sp.m + 1e-12
            assert (sp.m - 1) / (sp.k - 1) * (1 - r.d_star) <= 1.0 + 1e-9
            assert r.opt_value >= objective_F(a0, k / sp.m, sp) - 1e-15
        else:
            assert r.d_star is None
            assert r.opt_value >= objective_sym(a0, sp) - 1e-15


def test_stationarity_at_interior_maximizer():
    h = 1e-6
    for k, l in ((2, 1), (4, 2), (5, 1), (6, 3)):
        sp = StarSpec(k, l)
        r = solve_opt(sp, tol=1e-12)
        da = (objective_F(r.alpha_star + h, r.d_star, sp)
              - objective_F(r.alpha_star - h, r.d_star, sp)) / (2 * h)
        dd = (objective_F(r.alpha_star, r.d_star + h, sp)
              - objective_F(r.alpha_star, r.d_star - h, sp)) / (2 * h)
        assert abs(da) <= 1e-5 and abs(dd) <= 1e-5
    for k in (2, 3):
        sp = StarSpec(k, k)
        r = solve_opt(sp, tol=1e-12)
        da = (objective_sym(r.alpha_star + h, sp)
              - objective_sym(r.alpha_star - h, sp)) / (2 * h)
        assert abs(da) <= 1e-5


def test_taylor_against_solver():
    sp = StarSpec(4, 2)
    t = taylor_approx(sp)
    r = solve_opt(sp, tol=1e-12)
    assert abs(t.value_hat - r.opt_value) / r.opt_value <= 1e-7
    assert 0.0 < t.alpha_hat < 0.5 and 0.0 < t.d_hat < 4 / 6

    t = taylor_approx(StarSpec(5, 1))
    assert 1 / 7 < t.alpha_hat < 1.01 / 7

    sp = StarSpec(10, 3)
    t = taylor_approx(sp)
    r = solve_opt(sp, tol=1e-12)
    assert abs(t.alpha_hat - r.alpha_star) <= 1e-6
    assert abs(t.d_hat - r.d_star) <= 1e-6

    try:
        taylor_approx(StarSpec(3, 3))
        raise AssertionError("k = l accepted by the expansion")
    except WrongBranch:
        pass
