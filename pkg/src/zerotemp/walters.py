"""Walters-type potentials on the full 2-shift.

The potential is constant on the cylinders [0^n 1], [1^n 0], [01], [10] with
values a_n, c_n, b, d, and vanishes at the fixed points.  For geometric tails
everything of interest has a closed or semi-closed form: the gamma rate, an
implicit scalar equation for the pressure, and exact series for the cylinder
masses mu([0]), mu([1]) of the equilibrium state, including a perturbation
B(x) = a_beta on [0].

Series are evaluated in log domain: at large inverse temperature the terms
span hundreds of orders of magnitude and the sums themselves overflow floats,
so only their logarithms are ever materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .maxplus import MaxPlusMatrix, mp_2x2_closed_form
from .spectral import LocallyConstantPotential, perron
from .symbolic import full_shift

__all__ = [
    "WaltersPotential",
    "FirstCoordPerturbation",
    "WaltersZeroTempReport",
    "StabilityRow",
    "StabilityReport",
    "AppendixExample",
    "SeriesDivergenceError",
    "BracketError",
    "walters_gamma",
    "walters_pressure",
    "walters_cylinder_ratio",
    "walters_asymptotic_ratio",
    "classify_regime",
    "subaction_offset_estimate",
    "perturbation_stability_experiment",
    "appendix_example",
    "GOLDEN_RATIO",
    "GOLDEN_MASS_0",
]

GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0
GOLDEN_MASS_0 = (10.0 + 2.0 * math.sqrt(5.0)) / 20.0

TRUNC_CAP = 10**5


class SeriesDivergenceError(ValueError):
    """The cylinder-mass series diverges (perturbation at least as large as P)."""


class BracketError(RuntimeError):
    """The pressure bisection bracket does not straddle a sign change."""


@dataclass(frozen=True)
class WaltersPotential:
    """b = A|[01], d = A|[10]; a_n = A|[0^n 1] with geometric profile
    a_n = a (1-rho) rho^(n-2), so that sum a_n = a; same for c_n with total c.

    With ``relaxed`` the all-negative hypothesis is weakened to b, d <= 0,
    b + d < 0 (the individual tail terms must still be negative).
    """

    b: float
    d: float
    a: float
    c: float
    rho: float = 0.5
    theta: float = 0.5
    relaxed: bool = False

    def __post_init__(self):
        if not (0.0 < self.rho < 1.0):
            raise ValueError("rho must lie in (0, 1)")
        if not (0.0 < self.theta < 1.0):
            raise ValueError("theta must lie in (0, 1)")
        if self.relaxed:
            ok = self.b <= 0 and self.d <= 0 and self.b + self.d < 0
        else:
            ok = self.b < 0 and self.d < 0
        if not (ok and self.a < 0 and self.c < 0):
            raise ValueError("potential values must be negative (or relaxed form)")

    def a_n(self, n: int) -> float:
        if n < 2:
            raise ValueError("a_n defined for n >= 2")
        return self.a * (1.0 - self.rho) * self.rho ** (n - 2)

    def c_n(self, n: int) -> float:
        if n < 2:
            raise ValueError("c_n defined for n >= 2")
        return self.c * (1.0 - self.rho) * self.rho ** (n - 2)

    def partial_a(self, j: int) -> float:
        """a_2 + ... + a_{1+j}."""
        return self.a * (1.0 - self.rho**j)

    def partial_c(self, j: int) -> float:
        return self.c * (1.0 - self.rho**j)

    def cost_matrix(self) -> MaxPlusMatrix:
        return MaxPlusMatrix.from_rows(
            [
                [self.d + self.b + self.a, self.d + self.c],
                [self.b + self.a, self.b + self.d + self.c],
            ]
        )

    def default_trunc(self) -> int:
        # rho^J / (1 - rho) < 1e-15 so the dropped tail of the partial sums
        # is below relative rounding of a
        j = math.ceil(math.log(1e-15 * (1.0 - self.rho)) / math.log(self.rho))
        return min(max(int(j), 8), TRUNC_CAP)


@dataclass(frozen=True)
class FirstCoordPerturbation:
    """B(x) = a_beta on the cylinder [0], 0 on [1]."""

    a_beta: float

    @classmethod
    def none(cls) -> "FirstCoordPerturbation":
        return cls(0.0)


def walters_gamma(w: WaltersPotential) -> float:
    """gamma = max{a+b+d, c+b+d, (a+c+b+d)/2} (tail totals a, c)."""
    lam, _ = mp_2x2_closed_form(w.a, w.b, w.c, w.d)
    return lam


def _softplus(x: float) -> float:
    """log(1 + e^x), stable for both signs."""
    if x > 36.0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


def _logaddexp(x: float, y: float) -> float:
    if x == -math.inf:
        return y
    if y == -math.inf:
        return x
    m = max(x, y)
    return m + math.log1p(math.exp(min(x, y) - m))


def _log_series(total: float, rho: float, beta: float, z: float, trunc: int,
                weighted: bool) -> float:
    """log of sum_{j>=1} (j+1)^w exp(beta*total*(1-rho^j) - j z), w in {0,1}.

    Head terms up to trunc are summed after alignment to the running maximum;
    past trunc the exponent is constant in the rho^j part and the remaining
    geometric tail (plain or (j+1)-weighted) is added in closed form.
    """
    if z <= 0.0:
        raise SeriesDivergenceError(
            f"series exponent z = {z} is not positive (perturbation >= pressure)"
        )
    exponents = []
    for j in range(1, trunc):
        t = beta * total * (1.0 - rho**j) - j * z
        if weighted:
            t += math.log(j + 1)
        exponents.append(t)
    k = trunc
    x = math.exp(-z)
    one_minus_x = -math.expm1(-z)
    tail = beta * total - k * z - math.log(one_minus_x)
    if weighted:
        # sum_{j>=k} (j+1) x^j = x^k (k+1-k x) / (1-x)^2
        tail += math.log(k + 1 - k * x) - math.log(one_minus_x)
    exponents.append(tail)
    m = max(exponents)
    if m == -math.inf:
        return -math.inf
    return m + math.log(math.fsum(math.exp(t - m) for t in exponents))


def walters_pressure(w: WaltersPotential, beta: float, trunc: int | None = None,
                     tol: float = 1e-15) -> float:
    """Unique positive root P of
    e^{2P} = e^{beta(b+d)} (1 + sum_j e^{beta A_j - jP})(1 + sum_j e^{beta C_j - jP})
    with A_j, C_j the tail partial sums; bisection on log P.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    if trunc is None:
        trunc = w.default_trunc()
    gamma = walters_gamma(w)

    def f(t: float) -> float:
        p = math.exp(t)
        la = _log_series(w.a, w.rho, beta, p, trunc, False)
        lc = _log_series(w.c, w.rho, beta, p, trunc, False)
        return beta * (w.b + w.d) + _softplus(la) + _softplus(lc) - 2.0 * p

    lo = beta * gamma - 10.0
    hi = math.log(math.log(2.0)) + 1.0
    tries = 0
    while f(lo) <= 0.0:
        lo -= 20.0
        tries += 1
        if tries > 50:
            raise BracketError("lower bracket for log P not found")
    if f(hi) >= 0.0:
        raise BracketError("upper bracket for log P not found")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi or hi - lo < tol:
            break
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return math.exp(0.5 * (lo + hi))


def walters_cylinder_ratio(w: WaltersPotential, pert: FirstCoordPerturbation,
                           beta: float, p: float, trunc: int | None = None):
    """(S0/S1, mu([0])) from the exact cylinder-mass series.

    S0 = (1 + sum (j+1) e^{beta A_j + j a_beta - j P}) / (1 + sum e^{...}),
    S1 the same with C_j and no perturbation term;
    mu([0]) = S0 / (S0 + S1).
    """
    if trunc is None:
        trunc = w.default_trunc()
    z0 = p - pert.a_beta
    z1 = p
    log_s0 = (
        _softplus(_log_series(w.a, w.rho, beta, z0, trunc, True))
        - _softplus(_log_series(w.a, w.rho, beta, z0, trunc, False))
    )
    log_s1 = (
        _softplus(_log_series(w.c, w.rho, beta, z1, trunc, True))
        - _softplus(_log_series(w.c, w.rho, beta, z1, trunc, False))
    )
    t = log_s0 - log_s1
    ratio = math.exp(t) if t < 709.0 else math.inf
    # mu0 = 1 / (1 + e^{-t}), computed on the stable side
    if t >= 0:
        mu0 = 1.0 / (1.0 + math.exp(-t))
    else:
        e = math.exp(t)
        mu0 = e / (1.0 + e)
    return ratio, mu0


def walters_asymptotic_ratio(w: WaltersPotential, p: float, beta: float) -> float:
    """(P^2+e^{beta a})/(P+e^{beta a}) * (P+e^{beta c})/(P^2+e^{beta c})."""
    if p <= 0:
        raise ValueError("pressure must be positive")
    lp = math.log(p)
    t = (
        _logaddexp(2.0 * lp, beta * w.a)
        - _logaddexp(lp, beta * w.a)
        + _logaddexp(lp, beta * w.c)
        - _logaddexp(2.0 * lp, beta * w.c)
    )
    return math.exp(t) if t < 709.0 else math.inf


@dataclass(frozen=True)
class WaltersZeroTempReport:
    gamma: float
    regime: str  # symmetric | two-cycle-dominant | zero-dominant | boundary-golden
    mirrored: bool
    limit_mass_0: float
    l_limit: float | None


def classify_regime(w: WaltersPotential) -> WaltersZeroTempReport:
    """Exact case split on (a, c, b+d); c > a cases follow by the 0<->1 swap."""
    gamma = walters_gamma(w)
    a, c, bd = w.a, w.c, w.b + w.d
    if a == c:
        return WaltersZeroTempReport(gamma, "symmetric", False, 0.5, None)
    mirrored = c > a
    if mirrored:
        a, c = c, a
    if a + bd < c:
        mass = 0.5
        regime = "two-cycle-dominant"
        l_lim = None
    elif a + bd > c:
        mass = 0.0 if mirrored else 1.0
        regime = "zero-dominant"
        l_lim = None
    else:
        mass = 1.0 - GOLDEN_MASS_0 if mirrored else GOLDEN_MASS_0
        regime = "boundary-golden"
        l_lim = GOLDEN_RATIO
    return WaltersZeroTempReport(gamma, regime, mirrored, mass, l_lim)


def subaction_offset_estimate(w: WaltersPotential, beta: float, p: float,
                              a_beta: float = 0.0) -> float:
    """Subaction value at 1^inf from the first-coordinate eigen relation.

    With H(0^inf) = 1 the eigen equation at 0^inf gives
    H(1 0^inf) = (e^P - e^{a_beta}) e^{-beta d}; travelling from 1 0^inf to
    1^inf costs the tail total c, so V(1^inf) is estimated by
    (1/beta) log H(1 0^inf) - c.
    """
    num = math.expm1(p) - math.expm1(a_beta)
    if num <= 0.0:
        raise SeriesDivergenceError(
            "perturbation dominates the pressure in the eigen relation"
        )
    return (math.log(num) - beta * w.d) / beta - w.c


@dataclass(frozen=True)
class StabilityRow:
    beta: float
    pressure: float
    a_beta: float
    mu0_pert: float
    mu0_unpert: float
    vhat1_pert: float
    vhat1_unpert: float


@dataclass(frozen=True)
class StabilityReport:
    delta: float
    sign: float
    rows: tuple[StabilityRow, ...]
    mu_gap_tail: float
    vhat_gap_tail: float
    gaps_shrink: bool


def perturbation_stability_experiment(w: WaltersPotential, delta: float,
                                      beta_grid, sign: float = 1.0,
                                      trunc: int | None = None) -> StabilityReport:
    """Compare mu([0]) and the V(1^inf) estimate with and without the
    perturbation a_beta = sign * e^{beta delta} along a beta grid.

    The perturbed pressure reuses the unperturbed one: it lies in the
    sandwich [P - |a_beta|, P + |a_beta|], and for delta < gamma the width
    is a vanishing fraction of P itself.
    """
    grid = tuple(float(b) for b in beta_grid)
    if any(b2 <= b1 for b1, b2 in zip(grid, grid[1:])):
        raise ValueError("beta grid must be strictly increasing")
    rows = []
    for beta in grid:
        p = walters_pressure(w, beta, trunc)
        a_beta = sign * math.exp(beta * delta)
        _, mu_pert = walters_cylinder_ratio(
            w, FirstCoordPerturbation(a_beta), beta, p, trunc
        )
        _, mu_unpert = walters_cylinder_ratio(
            w, FirstCoordPerturbation.none(), beta, p, trunc
        )
        v_pert = subaction_offset_estimate(w, beta, p, a_beta)
        v_unpert = subaction_offset_estimate(w, beta, p, 0.0)
        rows.append(
            StabilityRow(beta, p, a_beta, mu_pert, mu_unpert, v_pert, v_unpert)
        )
    tail = rows[len(rows) // 2 :]
    mu_gap = max(abs(r.mu0_pert - r.mu0_unpert) for r in tail)
    v_gap = max(abs(r.vhat1_pert - r.vhat1_unpert) for r in tail)
    first_gap = abs(rows[0].mu0_pert - rows[0].mu0_unpert)
    last_gap = abs(rows[-1].mu0_pert - rows[-1].mu0_unpert)
    return StabilityReport(
        delta=delta,
        sign=sign,
        rows=tuple(rows),
        mu_gap_tail=mu_gap,
        vhat_gap_tail=v_gap,
        gaps_shrink=last_gap <= first_gap + 1e-12,
    )


@dataclass(frozen=True)
class AppendixExample:
    """Two-symbol example where a sup-norm perturbation of size e^{beta eta},
    eta above the gamma rate, flips the selected limit measure.

    Closed forms (g = e^{beta gamma_p}, h = e^{beta eta}):
    lambda_tilde = 1 + (h + sqrt(h^2 + 4 g^2))/2, H1 = (lambda_tilde - 1)/g,
    p0 = mu([0]) = 1/2 - h / (2 sqrt(h^2 + 4 g^2)).
    """

    beta: float
    gamma_p: float
    eta: float
    lambda_tilde: float
    h1_pert: float
    p0: float
    h1_unpert: float
    p_unpert: float
    mu0_unpert: float
    max_rel_err: float


def _rel_err(measured: float, expected: float) -> float:
    return abs(measured - expected) / max(abs(expected), 1e-300)


def appendix_example(gamma_p: float, eta: float, beta: float) -> AppendixExample:
    """Evaluate the selection-flip example and cross-check against perron().

    The perturbed transfer matrix is [[1, g], [g, 1+h]]; it is fed to the
    spectral solver as a depth-1 table and the numeric eigendata is compared
    with the closed forms (max relative error reported).
    """
    if not (gamma_p < eta < 0.0):
        raise ValueError("parameters must satisfy gamma_p < eta < 0")
    r = math.exp(beta * (gamma_p - eta))  # in (0, 1)
    s = math.sqrt(1.0 + 4.0 * r * r)
    lambda_tilde = 1.0 + 0.5 * math.exp(beta * eta) * (1.0 + s)
    h1_pert = 0.5 * math.exp(beta * (eta - gamma_p)) * (1.0 + s)
    p0 = 2.0 * r * r / (s * (s + 1.0))  # = 1/2 - h/(2 sqrt(h^2+4g^2)), stably
    p_unpert = math.log1p(math.exp(beta * gamma_p))

    sft = full_shift(1, 0.5)
    table_pert = {
        (0, 0): 0.0,
        (0, 1): beta * gamma_p,
        (1, 0): beta * gamma_p,
        (1, 1): math.log1p(math.exp(beta * eta)),
    }
    pd_pert = perron(LocallyConstantPotential(sft, 1, table_pert), beta=1.0)
    table_unpert = {
        (0, 0): 0.0,
        (0, 1): beta * gamma_p,
        (1, 0): beta * gamma_p,
        (1, 1): 0.0,
    }
    pd_unpert = perron(LocallyConstantPotential(sft, 1, table_unpert), beta=1.0)

    errs = [
        _rel_err(math.exp(pd_pert.log_lambda), lambda_tilde),
        _rel_err(math.exp(pd_pert.log_H[1]), h1_pert),
        _rel_err(pd_pert.mass_k[0], p0),
        _rel_err(math.exp(pd_unpert.log_H[1]), 1.0),
        _rel_err(pd_unpert.log_lambda, p_unpert),
        _rel_err(pd_unpert.mass_k[0], 0.5),
    ]
    return AppendixExample(
        beta=beta,
        gamma_p=gamma_p,
        eta=eta,
        lambda_tilde=lambda_tilde,
        h1_pert=h1_pert,
        p0=p0,
        h1_unpert=math.exp(pd_unpert.log_H[1]),
        p_unpert=p_unpert,
        mu0_unpert=pd_unpert.mass_k[0],
        max_rel_err=max(errs),
    )
