"""Runtime invariant suite behind ``bpc validate``.

Each check is cheap and returns a :class:`CheckResult`; nothing raises
unless the model code itself is broken.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import (
    EconomyState,
    ModelConfig,
    euler_rhs,
    phillips_curve_pi,
    phillips_rhs,
)
from .errors import ModelError
from .linear import classify, linearize, sigma_condition
from .matching import (
    worker_finding_rate,
    efficient_allocation,
    recruiting_rate,
    unemployment_rate,
    upper_tightness_bound,
)
from .scenarios import Shock, run_scenario


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _check(name, fn, config) -> CheckResult:
    try:
        ok, detail = fn(config)
    except ModelError as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, bool(ok), detail)


def _efficiency(config):
    alloc = efficient_allocation(config.matching)
    ok = alloc.theta_star == 1.0 and alloc.u_star == alloc.v_star == config.u_star
    return ok, f"u*={alloc.u_star!r} theta*={alloc.theta_star!r}"


def _beveridge(config):
    p = config.matching
    thetas = np.geomspace(p.theta_lower * 1.001, p.theta_upper * 0.999, 200)
    prod = np.asarray(unemployment_rate(thetas, p)) * np.asarray(recruiting_rate(thetas, p))
    err = float(np.max(np.abs(prod / p.u_star**2 - 1)))
    return err < 1e-12, f"max relative u*v error {err:.2e}"


def _upper_bound(config):
    p = config.matching
    theta_hi = upper_tightness_bound(p)
    err = abs(worker_finding_rate(theta_hi, p) - p.s) / p.s
    return err < 1e-10, f"|q(theta_upper) - s| / s = {err:.2e}"


def _divine(config):
    c = config.with_intercept(None)
    state = c.divine_state()
    r = max(abs(euler_rhs(state, c)), abs(phillips_rhs(state, c)))
    return r < 1e-12, f"max residual {r:.2e}"


def _source(config):
    lin = linearize(config.with_intercept(None))
    kinds = [classify(lin, b).kind for b in (("tight", "slack") if lin.kinked else ("tight",))]
    cond = sigma_condition(config)
    ok = all(k in ("source", "spiral-source") for k in kinds) or not cond.holds
    return ok, f"kinds={kinds} sigma_min={cond.sigma_min:.6g} holds={cond.holds}"


def _nullcline(config):
    c = config.with_intercept(None)
    us = np.linspace(c.u_star * 0.8, c.u_star * 1.2, 41)
    pis = np.asarray(phillips_curve_pi(us, c))
    r = max(abs(phillips_rhs(EconomyState(u, pi), c)) for u, pi in zip(us, pis))
    return r < 1e-8, f"max Phillips residual on nullcline {r:.2e}"


def _demand_signs(config):
    res = run_scenario(config.with_intercept(None), Shock("demand-rate-intercept", 1e-3), nonlinear=False)
    return res.u_gap > 0 and res.pi_gap < 0, f"u_gap={res.u_gap:.6g} pi_gap={res.pi_gap:.6g}"


CHECKS = (
    ("efficient-allocation", _efficiency),
    ("beveridge-hyperbola", _beveridge),
    ("upper-tightness-bound", _upper_bound),
    ("divine-coincidence", _divine),
    ("source-classification", _source),
    ("phillips-nullcline-residual", _nullcline),
    ("demand-shock-signs", _demand_signs),
)


def run_checks(config: ModelConfig) -> list[CheckResult]:
    return [_check(name, fn, config) for name, fn in CHECKS]


def all_passed(results) -> bool:
    return all(r.ok for r in results)
