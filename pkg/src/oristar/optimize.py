"""The two-parameter objective behind the star inducibility, its solver,
the concave majorant, and closed-form series approximations.

For k > l the quantity of interest is

    F(alpha, d) = alpha (1-alpha)^m d^k (1-d)^l
                  + ((k-1)^(k-1) l^l / (m-1)^(m-1)) (1-alpha) alpha^m (1-d)

maximized over [0, 1/2] x [0, k/m]; for k = l it collapses to the
one-parameter map 2^(-2k) (alpha (1-alpha)^(2k) + (1-alpha) alpha^(2k)).
The inducibility itself is (m+1)!/(k! l!) times the maximum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np

from .digraph import StarSpec
from .errors import DomainError, UnsupportedStar, WrongBranch

GRID = 1024
BRACKET_W = 1e-14
_INVPHI = (sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptResult:
    alpha_star: float
    d_star: float | None
    opt_value: float
    inducibility: float
    tol: float
    conjectural: bool


@dataclass(frozen=True)
class TaylorApprox:
    alpha_hat: float
    d_hat: float
    value_hat: float


def lin_coeff(spec: StarSpec) -> Fraction:
    """Slope (k-1)^(k-1) l^l / (m-1)^(m-1) of the majorant's linear piece."""
    k, l, m = spec.k, spec.l, spec.m
    return Fraction((k - 1) ** (k - 1) * l**l, (m - 1) ** (m - 1))


def f_majorant(x: float, spec: StarSpec) -> float:
    """Non-decreasing concave upper envelope of x^k (1-x)^l on [0, 1].

    Linear from the origin up to (k-1)/(m-1), the power curve itself to
    k/m, constant k^k l^l / m^m after that.
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError("x", x, "[0, 1]")
    k, l, m = spec.k, spec.l, spec.m
    if x <= (k - 1) / (m - 1):
        return float(lin_coeff(spec)) * x
    if x >= k / m:
        return float(spec.lambda0)
    return x**k * (1.0 - x) ** l


def objective_F(alpha: float, d: float, spec: StarSpec) -> float:
    if spec.k == spec.l:
        raise WrongBranch(spec.k, spec.l, "k > l")
    m = spec.m
    return alpha * (1.0 - alpha) ** m * d**spec.k * (1.0 - d) ** spec.l + float(
        lin_coeff(spec)
    ) * (1.0 - alpha) * alpha**m * (1.0 - d)


def objective_sym(alpha: float, spec: StarSpec) -> float:
    if spec.k != spec.l:
        raise WrongBranch(spec.k, spec.l, "k = l")
    e = 2 * spec.k
    return (alpha * (1.0 - alpha) ** e + (1.0 - alpha) * alpha**e) / 2.0**e


def _golden_max(fun, a: float, b: float) -> tuple[float, float]:
    """Golden-section maximization to bracket width BRACKET_W."""
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = fun(x1), fun(x2)
    while b - a > BRACKET_W:
        if f1 > f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = fun(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = fun(x2)
    xm = 0.5 * (a + b)
    return xm, fun(xm)


def _bisect_stationary(fun, x: float, lo: float, hi: float) -> float:
    """Polish x by bisecting the central-difference derivative sign change."""
    h = 1e-6
    eps = 1e-7
    a = max(lo + h, x - eps)
    b = min(hi - h, x + eps)
    if a >= b:
        return x

    def g(t: float) -> float:
        return fun(t + h) - fun(t - h)

    ga, gb = g(a), g(b)
    if not (ga > 0.0 > gb):
        return x
    for _ in range(60):
        mid = 0.5 * (a + b)
        gm = g(mid)
        if gm > 0.0:
            a = mid
        elif gm < 0.0:
            b = mid
        else:
            return mid
        if b - a < 1e-15:
            break
    return 0.5 * (a + b)


def solve_opt(spec: StarSpec, tol: float = 1e-12) -> OptResult:
    """Maximize the correct branch; grid bracket, coordinate golden-section,
    then a stationarity polish."""
    assert tol > 0.0
    if spec.k == spec.l == 1:
        raise UnsupportedStar()
    conjectural = spec.m < 6
    if spec.k == spec.l:
        alpha, opt, achieved = _solve_1d(lambda a: objective_sym(a, spec), 0.0, 0.5, tol)
        return OptResult(
            alpha_star=alpha,
            d_star=None,
            opt_value=opt,
            inducibility=spec.prefactor * opt,
            tol=achieved,
            conjectural=conjectural,
        )
    alpha, d, opt, achieved = _solve_2d(spec, tol)
    return OptResult(
        alpha_star=alpha,
        d_star=d,
        opt_value=opt,
        inducibility=spec.prefactor * opt,
        tol=achieved,
        conjectural=conjectural,
    )


def _solve_1d(fun, lo: float, hi: float, tol: float) -> tuple[float, float, float]:
    xs = np.linspace(lo, hi, GRID)
    vals = np.array([fun(x) for x in xs])
    i = int(np.argmax(vals))
    step = (hi - lo) / (GRID - 1)
    a = max(lo, float(xs[i]) - step)
    b = min(hi, float(xs[i]) + step)
    x, fx = _golden_max(fun, a, b)
    x2 = _bisect_stationary(fun, x, lo, hi)
    f2 = fun(x2)
    if f2 >= fx:
        x, fx = x2, f2
    return float(x), float(fx), float(max(abs(f2 - fx), 0.0))


def _grid_2d(spec: StarSpec) -> tuple[float, float]:
    k, l, m = spec.k, spec.l, spec.m
    alphas = np.linspace(0.0, 0.5, GRID)
    ds = np.linspace(0.0, k / m, GRID)
    term_a = alphas * (1.0 - alphas) ** m
    term_b = ds**k * (1.0 - ds) ** l
    term_a2 = (1.0 - alphas) * alphas**m
    grid = np.outer(term_a, term_b) + float(lin_coeff(spec)) * np.outer(term_a2, 1.0 - ds)
    i, j = np.unravel_index(int(np.argmax(grid)), grid.shape)
    return float(alphas[i]), float(ds[j])


def _solve_2d(spec: StarSpec, tol: float) -> tuple[float, float, float, float]:
    k, m = spec.k, spec.m
    d_hi = k / m
    alpha, d = _grid_2d(spec)
    step_a = 0.5 / (GRID - 1)
    step_d = d_hi / (GRID - 1)
    best = objective_F(alpha, d, spec)
    achieved = float("inf")
    for _ in range(60):
        alpha, _ = _golden_max(
            lambda a: objective_F(a, d, spec),
            max(0.0, alpha - step_a),
            min(0.5, alpha + step_a),
        )
        d, _ = _golden_max(
            lambda x: objective_F(alpha, x, spec),
            max(0.0, d - step_d),
            min(d_hi, d + step_d),
        )
        val = objective_F(alpha, d, spec)
        achieved = val - best
        if achieved < tol:
            break
        best = val
    alpha = _bisect_stationary(lambda a: objective_F(a, d, spec), alpha, 0.0, 0.5)
    d = _bisect_stationary(lambda x: objective_F(alpha, x, spec), d, 0.0, d_hi)
    val = objective_F(alpha, d, spec)
    return alpha, d, max(val, best), max(achieved, 0.0)


def taylor_approx(spec: StarSpec) -> TaylorApprox:
    """Leading-order series for the maximizer and maximum at large k.

    alpha_hat = (1 + l/(k m^(m-2))) / (m+1)
    d_hat     = (k/m) (1 - l/(k m^m))
    value_hat = k^k l^l / (m+1)^(m+1)
                + (k-1)^(k-1) l^(l+1) / ((m+1)^(m+1) (m-1)^(m-1))
                  * (1 + l/(2k m^(m-3)))
    """
    if spec.k == spec.l:
        raise WrongBranch(spec.k, spec.l, "k > l")
    k, l, m = spec.k, spec.l, spec.m
    alpha_hat = float(Fraction(1, m + 1) * (1 + Fraction(l, k * m ** (m - 2))))
    d_hat = float(Fraction(k, m) * (1 - Fraction(l, k * m**m)))
    lead = Fraction(k**k * l**l, (m + 1) ** (m + 1))
    second = Fraction((k - 1) ** (k - 1) * l ** (l + 1), (m + 1) ** (m + 1) * (m - 1) ** (m - 1))
    value_hat = float(lead + second * (1 + Fraction(l, 2 * k * m ** (m - 3))))
    return TaylorApprox(alpha_hat=alpha_hat, d_hat=d_hat, value_hat=value_hat)
