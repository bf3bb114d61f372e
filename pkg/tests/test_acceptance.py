"""Acceptance suite: one test per release criterion, each with an
independent oracle (grid search, root finding, finite differences, a
separate RK4 loop, hand-solved 2x2 systems)."""

import dataclasses
import math
import time

import numpy as np
import pytest
from scipy.optimize import brentq

from beveridge_phillips import (
    EconomyState,
    MatchingParams,
    ModelConfig,
    Policy,
    Preferences,
    classify,
    compute_gaps,
    efficient_allocation,
    elasticities,
    euler_rhs,
    fit_kinked_line,
    linear_solution,
    linearize,
    lower_tightness_bound,
    phillips_curve_u,
    phillips_rhs,
    read_series_csv,
    run_scenario,
    sigma_condition,
    solve_intersection,
    upper_tightness_bound,
    Shock,
)
from beveridge_phillips.data import GapPoint, bundled_fixture
from beveridge_phillips.dynamics import horizontal_euler_pi
from beveridge_phillips.linear import nullclines
from beveridge_phillips.matching import (
    customer_finding_rate,
    recruiter_producer_ratio,
    unemployment_rate,
    worker_finding_rate,
)
from beveridge_phillips.portrait import phase_portrait, quadrant_signs

import datetime as dt


def random_matching(rng):
    s = rng.uniform(0.005, 0.2)
    return MatchingParams(s, 2 * s + rng.uniform(1e-3, 3.0))


def random_config(rng):
    """Valid calibration that keeps the divine point a source."""
    m = random_matching(rng)
    us = m.u_star
    delta = rng.uniform(0.01, 0.08)
    kappa = rng.uniform(1e3, 1e5)
    sigma_min = 2 / (kappa * delta) * (1 - us) / (us * (1 - 2 * us))
    prefs = Preferences(delta=delta, sigma=sigma_min * rng.uniform(1.01, 3.0), pi_star=rng.uniform(0.0, 0.04),
                        kappa_plus=kappa)
    return ModelConfig(m, prefs, Policy(phi=rng.uniform(0.0, 3.0)))


def fd_jacobian(config, h_u=1e-7, h_pi=1e-7):
    """Central differences; inflation steps stay on the tight branch."""
    s0 = config.divine_state()

    def f(u, pi):
        st = EconomyState(u, pi)
        return np.array([euler_rhs(st, config), phillips_rhs(st, config, kappa=config.prefs.kappa_plus)])

    col_u = (f(s0.u + h_u, s0.pi) - f(s0.u - h_u, s0.pi)) / (2 * h_u)
    col_pi = (f(s0.u, s0.pi + h_pi) - f(s0.u, s0.pi - h_pi)) / (2 * h_pi)
    return np.column_stack([col_u, col_pi])


def rk4_linear(m, x0, t_end, dt):
    """Plain RK4 loop, independent of the package integrator."""
    n = int(round(t_end / dt))
    x = np.array(x0, dtype=float)
    out = [x.copy()]
    for _ in range(n):
        k1 = m @ x
        k2 = m @ (x + 0.5 * dt * k1)
        k3 = m @ (x + 0.5 * dt * k2)
        k4 = m @ (x + dt * k3)
        x = x + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out.append(x.copy())
    return np.array(out)


def test_efficient_allocation_matches_grid_search():
    rng = np.random.default_rng(1)
    grid = np.arange(1e-5, 0.5 + 1e-12, 1e-5)
    start = time.perf_counter()
    for _ in range(100):
        p = random_matching(rng)
        alloc = efficient_allocation(p)
        assert alloc.theta_star == 1.0
        assert alloc.u_star == p.s / p.omega
        assert alloc.v_star == p.s / p.omega
        total = grid + (p.s / p.omega) ** 2 / grid
        assert abs(grid[np.argmin(total)] - alloc.u_star) <= 1e-5
    assert time.perf_counter() - start < 1.0


def test_divine_coincidence_residuals():
    rng = np.random.default_rng(2)
    for _ in range(100):
        cfg = random_config(rng)
        i_star = cfg.prefs.pi_star + cfg.prefs.delta - cfg.prefs.sigma * (1 - cfg.u_star) * cfg.prefs.labor_force
        cfg = cfg.with_intercept(i_star)
        st = cfg.divine_state()
        assert abs(euler_rhs(st, cfg)) < 1e-12
        assert abs(phillips_rhs(st, cfg)) < 1e-12


def test_calibration_anchors():
    p = MatchingParams(s=0.04, omega=25 * 0.04)
    assert efficient_allocation(p).u_star == 0.04
    assert abs(lower_tightness_bound(p) - 0.006) <= 5e-4
    assert lower_tightness_bound(p) == pytest.approx(0.0064, rel=1e-15)


def test_upper_tightness_bound_matches_root_finding():
    rng = np.random.default_rng(4)
    for _ in range(50):
        p = random_matching(rng)
        lo = lower_tightness_bound(p)
        # q decreases from omega^2/(4s) at the lower bound towards zero
        root = brentq(lambda th: p.omega / math.sqrt(th) - p.s / th - p.s, lo, 1e12, xtol=1e-300, rtol=1e-15,
                      maxiter=500)
        assert abs(upper_tightness_bound(p) - root) / root < 1e-10


def test_elasticities_match_finite_differences():
    params = [MatchingParams(), MatchingParams(0.02, 1.0), MatchingParams(0.1, 0.3)]
    h = 1e-6
    worst = 0.0
    for p in params:
        lo, hi = lower_tightness_bound(p), upper_tightness_bound(p)
        for th in np.geomspace(lo * (1 + 1e-3), hi * (1 - 1e-3), 1000):
            e = elasticities(th, p)
            assert e.u == -0.5
            up, dn = th * math.exp(h), th * math.exp(-h)

            def dlog(fn):
                return (math.log(fn(up, p)) - math.log(fn(dn, p))) / (2 * h)

            fd = {
                "f": dlog(customer_finding_rate),
                "q": dlog(worker_finding_rate),
                "u": dlog(unemployment_rate),
                "tau": dlog(recruiter_producer_ratio),
            }
            # demand curve p(theta_j) = (1 + tau(theta)) / (1 + tau(theta_j)); invert its log-slope
            tp, tm = recruiter_producer_ratio(up, p), recruiter_producer_ratio(dn, p)
            fd["demand"] = 2 * h / math.log1p((tm - tp) / (1 + tp))
            for name, value in fd.items():
                exact = getattr(e, name)
                worst = max(worst, abs(value - exact) / abs(exact))
    assert worst < 1e-6, worst


def test_linearization_matches_finite_difference_jacobian():
    rng = np.random.default_rng(6)
    configs = [ModelConfig()] + [random_config(rng) for _ in range(20)]
    for cfg in configs:
        m = linearize(cfg).matrix("tight")
        jac = fd_jacobian(cfg)
        np.testing.assert_allclose(m, jac, rtol=1e-6, atol=0)


def test_source_for_every_policy_coefficient():
    base = ModelConfig()
    assert sigma_condition(base).holds
    for phi in (0, 0.25, 0.5, 1, 1.5, 2):
        cfg = dataclasses.replace(base, policy=Policy(phi=phi))
        cls = classify(linearize(cfg))
        assert cls.trace > 0 and cls.determinant > 0
        assert all(mu.real > 0 for mu in cls.eigenvalues)
        assert cls.is_source
    weak = ModelConfig(prefs=Preferences(sigma=0.02), policy=Policy(phi=0.0))
    assert not sigma_condition(weak).holds
    assert not classify(linearize(weak)).is_source


@pytest.mark.parametrize("phi,regime", [(0.0, "real"), (1.5, "spiral")])
def test_closed_form_solution_matches_rk4(phi, regime):
    start = time.perf_counter()
    lin = linearize(ModelConfig(policy=Policy(phi=phi)))
    cls = classify(lin)
    assert cls.complex == (regime == "spiral")
    x0 = np.array([0.01, 0.002])
    t = np.linspace(0.0, 5.0, 50001)
    numeric = rk4_linear(lin.matrix(), x0, 5.0, 1e-4)
    exact = linear_solution(lin, x0, t)
    assert np.max(np.abs(exact - numeric)) < 1e-8
    assert time.perf_counter() - start < 5.0


def test_shock_signs():
    mags = np.linspace(1e-4, 5e-3, 12)
    for phi in (1.5, 0.5):
        cfg = ModelConfig(policy=Policy(phi=phi))
        for mag in mags:
            res = run_scenario(cfg, Shock("demand-rate-intercept", mag), nonlinear=False)
            assert res.u_gap > 0 and res.pi_gap < 0
            res = run_scenario(cfg, Shock("demand-delta", -mag), nonlinear=False)
            assert res.u_gap > 0 and res.pi_gap < 0
    active = ModelConfig(policy=Policy(phi=1.5))
    for kind, mags_ in (("supply-efficacy", -np.linspace(0.01, 0.2, 10)),
                        ("supply-separation", np.linspace(1e-3, 1e-2, 10))):
        for mag in mags_:
            res = run_scenario(active, Shock(kind, mag), recenter_intercept=False, nonlinear=False)
            assert res.u_star_after > res.u_star_before
            assert res.pi_gap > 0 and res.u_gap < 0


def test_kinked_phillips_curve():
    kp = 60000.0
    cfg = ModelConfig(prefs=Preferences(kappa_plus=kp, kappa_minus=2 * kp))
    lin = linearize(cfg)
    slopes = nullclines(lin).phillips_slopes
    assert slopes["tight"] / slopes["slack"] == 2 * kp / kp

    # hand-derived: E = +-d shifts the Euler line; the branch follows sign(pih)
    us, pr, phi = cfg.u_star, cfg.prefs, cfg.policy.phi
    sigma_l = pr.sigma * pr.labor_force

    def k(kappa):
        return 2 * (1 - us) / (kappa * us * (1 - 2 * us)) / pr.delta

    for d in (1e-4, 1e-3, 4e-3):
        u_c = d / (sigma_l + (phi - 1) * k(2 * kp))
        u_e = -d / (sigma_l + (phi - 1) * k(kp))
        contraction, expansion = solve_intersection(lin, d), solve_intersection(lin, -d)
        assert contraction.branch == "slack" and expansion.branch == "tight"
        assert abs(contraction.u_gap - u_c) < 1e-10 and abs(contraction.pi_gap + k(2 * kp) * u_c) < 1e-10
        assert abs(expansion.u_gap - u_e) < 1e-10 and abs(expansion.pi_gap + k(kp) * u_e) < 1e-10
        assert abs(expansion.pi_gap) > abs(contraction.pi_gap)

    for phi in (1.5, 0.5):
        c = dataclasses.replace(cfg, policy=Policy(phi=phi))
        pp = phase_portrait(c, (0.03, 0.05), (0.019, 0.021), (31, 31))
        assert (pp.pi > pr.pi_star).any() and (pp.pi < pr.pi_star).any()
        assert all(quadrant_signs(pp, c).values())


def test_degenerate_curves():
    cfg = ModelConfig(prefs=Preferences(sigma=0.0), policy=Policy(intercept=0.05, phi=0.0))
    level = horizontal_euler_pi(cfg)
    assert level == pytest.approx(0.05 - cfg.prefs.delta, abs=1e-15)
    for u in (0.02, 0.04, 0.1, 0.3):
        assert euler_rhs(EconomyState(u, level), cfg) == pytest.approx(0.0, abs=1e-15)
    taylor = ModelConfig(prefs=Preferences(sigma=0.0), policy=Policy(intercept=0.03, phi=1.5))
    level = horizontal_euler_pi(taylor)
    assert level == pytest.approx(taylor.policy_rate(level) - taylor.prefs.delta, abs=1e-15)

    flat = ModelConfig(prefs=Preferences.symmetric(1e-9))
    for gap in (-0.05, 0.05):
        assert abs(phillips_curve_u(flat.prefs.pi_star + gap, flat) - flat.u_star) < 1e-6


def test_gap_pipeline_and_kinked_fit():
    index = read_series_csv(bundled_fixture("synthetic_index.csv"))
    theta = read_series_csv(bundled_fixture("synthetic_tightness.csv"))
    gaps = compute_gaps(index, theta, target=0.02)
    assert len(gaps) == len(index) - 12
    assert all(g.inflation_gap == 0.03 for g in gaps)

    xs = np.linspace(-0.5, 0.6, 23)
    planted = [GapPoint(dt.date(2000, 1, 1), float(x), float(0.9 * x if x > 0 else 0.3 * x)) for x in xs]
    fit = fit_kinked_line(planted)
    assert abs(fit.slope_tight - 0.9) < 1e-10
    assert abs(fit.slope_slack - 0.3) < 1e-10
    assert fit.steeper_when_tight
