"""Comparative statics under unexpected permanent shocks.

Because the linearized system is a source, the economy jumps straight to
the intersection of the Euler and Phillips curves. A shock moves one of the
curves and the economy jumps to the new intersection.

In deviation coordinates around the (post-shock) divine point, the two
curves are

    Euler:     sigma l uh - (phi - 1) pih = E,   E = intercept - i*
    Phillips:  k_b uh + (pih - P) = 0,            k_b = a21_b / delta

where ``E`` is how far the policy intercept sits above the efficient rate
and the branch ``b`` is tight when ``pih > P`` and slack when ``pih < P``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .dynamics import EconomyState, ModelConfig, steady_state
from .errors import AmbiguousSolutionError, InconsistentBranchError, InvalidParamsError, ModelError
from .linear import LinearizedSystem, classify, linearize
from .matching import MatchingParams

DEMAND_KINDS = ("demand-delta", "demand-sigma", "demand-rate-intercept")
SUPPLY_KINDS = ("supply-separation", "supply-efficacy")


@dataclass(frozen=True)
class Shock:
    """Signed change in one parameter, in that parameter's units."""

    kind: str
    magnitude: float

    def __post_init__(self):
        if self.kind not in DEMAND_KINDS + SUPPLY_KINDS:
            raise ValueError(f"unknown shock kind {self.kind!r}")

    @property
    def is_demand(self) -> bool:
        return self.kind in DEMAND_KINDS


@dataclass(frozen=True)
class Intersection:
    u_gap: float
    pi_gap: float
    branch: str  # "tight", "slack" or "at-kink"


@dataclass(frozen=True)
class ScenarioResult:
    shock: Shock
    before: EconomyState
    after: EconomyState
    u_star_before: float
    u_star_after: float
    u_gap: float
    pi_gap: float
    tightness_gap: float
    branch_used: str
    policy_mode: str
    # nonlinear post-shock steady state near the linear answer, if one exists
    after_nonlinear: Optional[EconomyState] = None


@dataclass(frozen=True)
class KinkAsymmetry:
    pi_gap_expansionary: float
    pi_gap_contractionary: float
    u_gap_expansionary: float
    u_gap_contractionary: float
    ratio: float


def _branch_label(z: float) -> str:
    if z > 0:
        return "tight"
    if z < 0:
        return "slack"
    return "at-kink"


def solve_intersection(lin: LinearizedSystem, euler_intercept_shift: float = 0.0,
                       phillips_intercept_shift: float = 0.0) -> Intersection:
    """Intersection of the shifted Euler line and the (kinked) Phillips line.

    ``euler_intercept_shift`` is ``E`` above: a positive value is
    contractionary. ``phillips_intercept_shift`` translates the whole
    Phillips curve, kink included, vertically by ``P``.
    """
    for branch in ("tight", "slack") if lin.kinked else ("tight",):
        cls = classify(lin, branch)
        if not cls.is_source:
            raise AmbiguousSolutionError(f"{branch} branch is a {cls.kind}, not a source")
    e, p = euler_intercept_shift, phillips_intercept_shift
    candidates = {}
    for branch, a21 in (("tight", lin.a21), ("slack", lin.a21_slack)):
        k = a21 / lin.delta
        det = lin.sigma_l + (lin.phi - 1) * k
        u_gap = (e + (lin.phi - 1) * p) / det
        pi_gap = p - k * u_gap
        candidates[branch] = (u_gap, pi_gap)
        if not lin.kinked:
            break
    consistent = {}
    for branch, (u_gap, pi_gap) in candidates.items():
        z = pi_gap - p
        if not lin.kinked or z == 0 or _branch_label(z) == branch:
            consistent[branch] = (u_gap, pi_gap, _branch_label(z))
    if not consistent:
        raise InconsistentBranchError("no branch yields a sign-consistent intersection", candidates)
    u_gap, pi_gap, label = next(iter(consistent.values()))
    return Intersection(float(u_gap), float(pi_gap), label)


def shocked_config(config: ModelConfig, shock: Shock, recenter_intercept: bool = False) -> ModelConfig:
    """Configuration after ``shock``; the policy intercept is frozen at its
    pre-shock level unless ``recenter_intercept`` lets it track the new i*."""
    intercept = config.intercept
    pr, m = config.prefs, config.matching
    try:
        if shock.kind == "demand-delta":
            config = replace(config, prefs=replace(pr, delta=pr.delta + shock.magnitude))
        elif shock.kind == "demand-sigma":
            config = replace(config, prefs=replace(pr, sigma=pr.sigma + shock.magnitude))
        elif shock.kind == "demand-rate-intercept":
            intercept = intercept + shock.magnitude
        elif shock.kind == "supply-separation":
            config = replace(config, matching=MatchingParams(m.s + shock.magnitude, m.omega))
        elif shock.kind == "supply-efficacy":
            config = replace(config, matching=MatchingParams(m.s, m.omega + shock.magnitude))
    except InvalidParamsError as exc:
        raise InvalidParamsError(f"post-shock parameters invalid: {exc}") from exc
    if recenter_intercept:
        return config.with_intercept(None)
    return config.with_intercept(intercept)


def comparative_statics(config: ModelConfig) -> tuple[Intersection, LinearizedSystem]:
    """Linear steady state of ``config`` around its own divine point."""
    lin = linearize(config.with_intercept(None))
    shift = config.intercept - config.i_star
    return solve_intersection(lin, shift), lin


def _level(config: ModelConfig, x: Intersection) -> EconomyState:
    return EconomyState(config.u_star + x.u_gap, config.prefs.pi_star + x.pi_gap)


def run_scenario(config: ModelConfig, shock: Shock, recenter_intercept: bool = False,
                 nonlinear: bool = True) -> ScenarioResult:
    """Jump from the pre-shock to the post-shock curve intersection.

    Supply shocks move the efficient unemployment rate, so the post-shock
    system is re-linearized around its own divine point and gaps are
    measured there.
    """
    before_x, _ = comparative_statics(config)
    new = shocked_config(config, shock, recenter_intercept)
    after_x, _ = comparative_statics(new)
    after = _level(new, after_x)
    after_nl = None
    if nonlinear:
        try:
            after_nl = steady_state(new, guess=after.pi, half_width=0.05, samples=2001)
        except ModelError:
            after_nl = None
    return ScenarioResult(
        shock=shock,
        before=_level(config, before_x),
        after=after,
        u_star_before=config.u_star,
        u_star_after=new.u_star,
        u_gap=after_x.u_gap,
        pi_gap=after_x.pi_gap,
        tightness_gap=(new.u_star / after.u) ** 2 - 1,
        branch_used=after_x.branch,
        policy_mode=new.policy.mode,
        after_nonlinear=after_nl,
    )


def apply_demand_shock(config: ModelConfig, shock: Shock, nonlinear: bool = True) -> ScenarioResult:
    if not shock.is_demand:
        raise ValueError(f"{shock.kind} is not a demand shock")
    return run_scenario(config, shock, nonlinear=nonlinear)


def apply_supply_shock(config: ModelConfig, shock: Shock, recenter_intercept: bool = False,
                       nonlinear: bool = True) -> ScenarioResult:
    if shock.is_demand:
        raise ValueError(f"{shock.kind} is not a supply shock")
    return run_scenario(config, shock, recenter_intercept=recenter_intercept, nonlinear=nonlinear)


def kink_asymmetry_report(config: ModelConfig, magnitude: float = 0.001) -> KinkAsymmetry:
    """Inflation responses to equal-sized expansionary and contractionary
    policy-rate shocks from the divine point."""
    m = abs(magnitude)
    lin = linearize(config.with_intercept(None))
    expansion = solve_intersection(lin, -m)
    contraction = solve_intersection(lin, m)
    return KinkAsymmetry(
        pi_gap_expansionary=expansion.pi_gap,
        pi_gap_contractionary=contraction.pi_gap,
        u_gap_expansionary=expansion.u_gap,
        u_gap_contractionary=contraction.u_gap,
        ratio=abs(expansion.pi_gap) / abs(contraction.pi_gap),
    )


def shock_grid(config: ModelConfig, kind: str, magnitudes, **kwargs) -> list[ScenarioResult]:
    return [run_scenario(config, Shock(kind, float(mag)), **kwargs) for mag in np.atleast_1d(magnitudes)]
