import math

import pytest

from zerotemp import (
    GOLDEN_MASS_0,
    GOLDEN_RATIO,
    FirstCoordPerturbation,
    SeriesDivergenceError,
    WaltersPotential,
    appendix_example,
    classify_regime,
    mp_eigenvalue,
    perturbation_stability_experiment,
    subaction_offset_estimate,
    walters_asymptotic_ratio,
    walters_cylinder_ratio,
    walters_gamma,
    walters_pressure,
)
from zerotemp.verify import regime_potentials
from zerotemp.walters import _log_series


W4 = WaltersPotential(b=-1.0, d=-1.0, a=-1.0, c=-3.0)


def test_parameter_validation():
    with pytest.raises(ValueError):
        WaltersPotential(b=-1.0, d=-1.0, a=-1.0, c=-1.0, rho=1.0)
    with pytest.raises(ValueError):
        WaltersPotential(b=0.0, d=-1.0, a=-1.0, c=-1.0)  # strict needs b < 0
    # relaxed form allows b = 0 as long as b + d < 0
    WaltersPotential(b=0.0, d=-1.0, a=-1.0, c=-1.0, relaxed=True)
    with pytest.raises(ValueError):
        WaltersPotential(b=0.0, d=0.0, a=-1.0, c=-1.0, relaxed=True)
    with pytest.raises(ValueError):
        WaltersPotential(b=-1.0, d=-1.0, a=0.0, c=-1.0, relaxed=True)


def test_tail_rule():
    w = WaltersPotential(b=-1.0, d=-1.0, a=-1.0, c=-2.0, rho=0.5)
    assert w.a_n(2) == -0.5
    assert w.a_n(3) == -0.25
    assert sum(w.a_n(n) for n in range(2, 60)) == pytest.approx(w.a, abs=1e-15)
    assert w.partial_a(3) == pytest.approx(w.a_n(2) + w.a_n(3) + w.a_n(4), abs=1e-15)
    # partial sums squeezed between a and a + |a| rho^j
    for j in range(1, 40):
        assert w.a <= w.partial_a(j) <= w.a + abs(w.a) * w.rho**j


def test_gamma_closed_form():
    assert walters_gamma(W4) == -3.0
    assert walters_gamma(WaltersPotential(b=-1.0, d=-1.0, a=-1.0, c=-1.0)) == -2.0
    # middle branch attained
    assert walters_gamma(WaltersPotential(b=-0.5, d=-0.5, a=-1.0, c=-1.0)) == -1.5
    # nearly degenerate tails: gamma -> max of the 2x2 travelling costs
    wd = WaltersPotential(b=-1.0, d=-1.0, a=-1e-9, c=-1e-9)
    assert walters_gamma(wd) == pytest.approx(-1.0, abs=1e-8)


def test_gamma_is_cost_matrix_eigenvalue():
    for w in regime_potentials().values():
        assert walters_gamma(w) == pytest.approx(float(mp_eigenvalue(w.cost_matrix())), abs=1e-14)


def test_pressure_degenerate_tails_match_two_state_closed_form():
    wd = WaltersPotential(b=-1.0, d=-1.0, a=-1e-9, c=-1e-9)
    for beta in (1.0, 5.0, 20.0):
        p = walters_pressure(wd, beta)
        assert p == pytest.approx(math.log1p(math.exp(-beta)), abs=1e-8)


def test_pressure_rate_approaches_gamma():
    for w in regime_potentials().values():
        gamma = walters_gamma(w)
        p = walters_pressure(w, 150.0)
        assert abs(math.log(p) / 150.0 - gamma) <= 0.05


def test_pressure_boundary_prefactor_is_golden():
    p = walters_pressure(W4, 150.0)
    assert p / math.exp(150.0 * -3.0) == pytest.approx(GOLDEN_RATIO, abs=0.02)


def test_pressure_perturbation_sandwich():
    beta, eps = 10.0, 0.01
    w = WaltersPotential(b=-1.0, d=-1.0, a=-1.0, c=-2.0)
    wp = WaltersPotential(b=-1.0 + eps, d=-1.0, a=-1.0, c=-2.0)
    assert abs(walters_pressure(wp, beta) - walters_pressure(w, beta)) <= beta * eps


def test_cylinder_ratio_regimes():
    beta = 150.0
    for name, w in regime_potentials().items():
        rep = classify_regime(w)
        p = walters_pressure(w, beta)
        ratio, mu0 = walters_cylinder_ratio(w, FirstCoordPerturbation.none(), beta, p)
        if rep.regime == "zero-dominant":
            if rep.mirrored:
                assert mu0 <= 0.01
            else:
                assert mu0 >= 0.99 and ratio > 100.0
        else:
            assert mu0 == pytest.approx(rep.limit_mass_0, abs=0.02)


def test_boundary_regime_golden_limits():
    beta = 150.0
    p = walters_pressure(W4, beta)
    ratio, mu0 = walters_cylinder_ratio(W4, FirstCoordPerturbation.none(), beta, p)
    assert ratio == pytest.approx((3.0 + math.sqrt(5.0)) / 2.0, rel=0.02)
    assert mu0 == pytest.approx(GOLDEN_MASS_0, abs=0.02)


def test_asymptotic_ratio():
    beta = 150.0
    sym = WaltersPotential(b=-1.0, d=-1.0, a=-1.0, c=-1.0)
    assert walters_asymptotic_ratio(sym, walters_pressure(sym, beta), beta) == 1.0
    for w in regime_potentials().values():
        p = walters_pressure(w, beta)
        exact, _ = walters_cylinder_ratio(w, FirstCoordPerturbation.none(), beta, p)
        asym = walters_asymptotic_ratio(w, p, beta)
        if math.isinf(exact) or math.isinf(asym):
            assert math.isinf(exact) and math.isinf(asym)
        else:
            assert exact == pytest.approx(asym, rel=0.02)


def test_series_divergence_detected():
    p = walters_pressure(W4, 50.0)
    big = FirstCoordPerturbation(2.0 * p)
    with pytest.raises(SeriesDivergenceError):
        walters_cylinder_ratio(W4, big, 50.0, p)


def test_series_small_terms_negligible():
    # head of the weighted series is tiny compared to the analytic tail
    beta = 150.0
    p = walters_pressure(W4, beta)
    head = sum(
        (j + 1) * math.exp(beta * W4.partial_a(j) - j * p) for j in range(1, 150)
    )
    assert head < 1e-8


def test_tail_sums_match_asymptotics():
    # geometric tail times P approaches 1 once the potential part saturates
    beta = 150.0
    w = WaltersPotential(b=-1.0, d=-1.0, a=-1.0, c=-1.0)
    p = walters_pressure(w, beta)
    k = 150
    tail = math.exp(-k * p) / (-math.expm1(-p))
    assert tail * p == pytest.approx(1.0, rel=0.05)
    weighted_tail = math.exp(-k * p) / (-math.expm1(-p)) * (k + 1.0 / (-math.expm1(-p)))
    assert weighted_tail * p * p == pytest.approx(1.0, rel=0.05)


def test_log_series_against_direct_sum():
    # moderate parameters where the direct sum is representable
    w = WaltersPotential(b=-1.0, d=-1.0, a=-1.0, c=-2.0)
    beta, z = 3.0, 0.25
    direct = sum(math.exp(beta * w.partial_a(j) - j * z) for j in range(1, 4000))
    assert _log_series(w.a, w.rho, beta, z, w.default_trunc(), False) == pytest.approx(
        math.log(direct), abs=1e-12
    )
    direct_w = sum(
        (j + 1) * math.exp(beta * w.partial_a(j) - j * z) for j in range(1, 4000)
    )
    assert _log_series(w.a, w.rho, beta, z, w.default_trunc(), True) == pytest.approx(
        math.log(direct_w), abs=1e-12
    )


def test_classify_regime_cases():
    assert classify_regime(WaltersPotential(b=-1.0, d=-1.0, a=-1.0, c=-1.0)).regime == "symmetric"
    rep2 = classify_regime(WaltersPotential(b=-2.0, d=-2.0, a=-1.0, c=-2.0))
    assert rep2.regime == "two-cycle-dominant" and rep2.limit_mass_0 == 0.5
    rep3 = classify_regime(WaltersPotential(b=-0.5, d=-0.5, a=-1.0, c=-3.0))
    assert rep3.regime == "zero-dominant" and rep3.limit_mass_0 == 1.0
    rep4 = classify_regime(W4)
    assert rep4.regime == "boundary-golden"
    assert rep4.limit_mass_0 == pytest.approx(GOLDEN_MASS_0, abs=1e-15)
    assert rep4.l_limit == pytest.approx(GOLDEN_RATIO, abs=1e-15)
    mirror = classify_regime(WaltersPotential(b=-1.0, d=-1.0, a=-3.0, c=-1.0))
    assert mirror.mirrored and mirror.limit_mass_0 == pytest.approx(1.0 - GOLDEN_MASS_0, abs=1e-15)


def test_mirror_symmetry_of_masses():
    # swapping the roles of the two fixed points flips mu([0]) to mu([1])
    beta = 120.0
    w = WaltersPotential(b=-0.7, d=-1.3, a=-1.0, c=-2.5)
    m = WaltersPotential(b=-1.3, d=-0.7, a=-2.5, c=-1.0)
    pw, pm = walters_pressure(w, beta), walters_pressure(m, beta)
    assert pw == pytest.approx(pm, rel=1e-10)
    _, mu_w = walters_cylinder_ratio(w, FirstCoordPerturbation.none(), beta, pw)
    _, mu_m = walters_cylinder_ratio(m, FirstCoordPerturbation.none(), beta, pm)
    assert mu_w == pytest.approx(1.0 - mu_m, abs=1e-9)


def test_stability_experiment():
    gamma = walters_gamma(W4)
    rep = perturbation_stability_experiment(W4, gamma - 0.5, (50.0, 100.0, 150.0))
    assert rep.mu_gap_tail <= 0.02
    assert rep.vhat_gap_tail <= 0.02
    assert rep.gaps_shrink
    # zero perturbation: gaps vanish identically
    rep0 = perturbation_stability_experiment(W4, gamma - 0.5, (50.0, 100.0), sign=0.0)
    assert rep0.mu_gap_tail == 0.0 and rep0.vhat_gap_tail == 0.0


def test_instability_branch_signals_divergence():
    w = WaltersPotential(b=-1.0, d=-1.0, a=-1.0, c=-1.0)  # gamma = -2
    with pytest.raises(SeriesDivergenceError):
        perturbation_stability_experiment(w, -1.0, (50.0, 100.0), sign=1.0)


def test_subaction_offset_estimate_unperturbed_limit():
    # (1/beta) log H(1 0^inf) - c approaches gamma - d - c
    beta = 200.0
    w = WaltersPotential(b=-1.0, d=-1.0, a=-1.0, c=-1.0)
    p = walters_pressure(w, beta)
    v = subaction_offset_estimate(w, beta, p)
    assert v == pytest.approx(walters_gamma(w) - w.d - w.c, abs=0.01)


def test_appendix_closed_forms():
    with pytest.raises(ValueError):
        appendix_example(-1.0, -2.0, 10.0)
    ex = appendix_example(-2.0, -1.0, 10.0)
    assert ex.p0 == pytest.approx(2.0611536096934955e-09, rel=1e-10)
    assert ex.max_rel_err <= 1e-10
    assert ex.mu0_unpert == pytest.approx(0.5, abs=1e-12)
    assert ex.h1_unpert == pytest.approx(1.0, abs=1e-12)
    assert ex.p_unpert == pytest.approx(math.log1p(math.exp(-20.0)), rel=1e-12)


def test_appendix_selection_flip():
    # perturbed chain selects the other fixed point: mass of [0] collapses
    assert appendix_example(-2.0, -1.0, 20.0).p0 <= 1e-8
    rate = math.log(appendix_example(-2.0, -1.0, 50.0).h1_pert) / 50.0
    assert rate == pytest.approx(1.0, abs=0.02)
