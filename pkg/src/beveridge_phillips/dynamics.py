"""Nonlinear Euler-Phillips dynamics in the unemployment-inflation plane.

The Euler equation governs unemployment through the total return on
wealth (real rate plus the hedonic return ``sigma * y``); the Phillips
equation governs inflation through the labor-market inefficiency term

    bracket(u) = 1 - (u / v(u)) * (1 - u - v(u)) / (1 - 2 u),

which is positive when the market is inefficiently tight, zero at the
efficient rate, negative when it is inefficiently slack. Price-adjustment
costs may be asymmetric: ``kappa_minus`` applies below the inflation norm,
``kappa_plus`` at or above it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from ._numerics import bisect, rk4_step
from .errors import (
    DegenerateCurveError,
    InfeasibleError,
    InvalidParamsError,
    NoSolutionError,
    OutOfDomainError,
    StepFailure,
)
from .matching import MatchingParams

DOMAIN_MARGIN = 1e-6


@dataclass(frozen=True)
class Preferences:
    """Household preferences and price-adjustment costs.

    ``delta`` discount rate, ``sigma`` marginal utility of relative wealth,
    ``pi_star`` inflation norm, ``kappa_plus``/``kappa_minus`` adjustment
    costs above/below the norm, ``labor_force`` size of the labor force.
    """

    delta: float = 0.03
    sigma: float = 0.03
    pi_star: float = 0.02
    kappa_plus: float = 60000.0
    kappa_minus: Optional[float] = None
    labor_force: float = 1.0

    def __post_init__(self):
        if self.kappa_minus is None:
            object.__setattr__(self, "kappa_minus", self.kappa_plus)
        if not self.delta > 0:
            raise InvalidParamsError(f"delta must be positive, got {self.delta}")
        if not self.sigma >= 0:
            raise InvalidParamsError(f"sigma must be non-negative, got {self.sigma}")
        if not (self.kappa_plus > 0 and self.kappa_minus > 0):
            raise InvalidParamsError("price-adjustment costs must be positive")
        if self.kappa_minus < self.kappa_plus:
            raise InvalidParamsError("kappa_minus must be at least kappa_plus")
        if not self.labor_force > 0:
            raise InvalidParamsError(f"labor_force must be positive, got {self.labor_force}")
        if not math.isfinite(self.pi_star):
            raise InvalidParamsError("pi_star must be finite")

    @classmethod
    def symmetric(cls, kappa: float, **kwargs) -> "Preferences":
        return cls(kappa_plus=kappa, kappa_minus=kappa, **kwargs)

    @property
    def kinked(self) -> bool:
        return self.kappa_minus != self.kappa_plus


@dataclass(frozen=True)
class Policy:
    """Taylor rule ``i = intercept + phi (pi - pi_star)``.

    An intercept of ``None`` tracks the efficient nominal rate of whatever
    configuration the policy is attached to.
    """

    intercept: Optional[float] = None
    phi: float = 1.5
    enforce_zlb: bool = False

    def __post_init__(self):
        if not self.phi >= 0:
            raise InvalidParamsError(f"phi must be non-negative, got {self.phi}")

    @property
    def mode(self) -> str:
        return "active" if self.phi > 1 else "passive"


@dataclass(frozen=True)
class EconomyState:
    u: float
    pi: float


@dataclass(frozen=True)
class ModelConfig:
    matching: MatchingParams = field(default_factory=MatchingParams)
    prefs: Preferences = field(default_factory=Preferences)
    policy: Policy = field(default_factory=Policy)

    @property
    def u_star(self) -> float:
        return self.matching.u_star

    @property
    def i_star(self) -> float:
        return efficient_nominal_rate(self).value

    @property
    def intercept(self) -> float:
        if self.policy.intercept is None:
            return self.i_star
        return self.policy.intercept

    def policy_rate(self, pi):
        i = self.intercept + self.policy.phi * (np.asarray(pi, dtype=float) - self.prefs.pi_star)
        if self.policy.enforce_zlb:
            i = np.maximum(i, 0.0)
        return float(i) if np.ndim(i) == 0 else i

    def divine_state(self) -> EconomyState:
        return EconomyState(self.u_star, self.prefs.pi_star)

    def with_intercept(self, intercept: Optional[float]) -> "ModelConfig":
        return replace(self, policy=replace(self.policy, intercept=intercept))

    def kappa_for(self, pi: float) -> float:
        # at the norm both branches agree in the cost function; kappa_plus by convention
        return self.prefs.kappa_minus if pi < self.prefs.pi_star else self.prefs.kappa_plus


@dataclass(frozen=True)
class NominalRate:
    value: float
    zlb_violation: bool


@dataclass
class Trajectory:
    t: np.ndarray
    u: np.ndarray
    pi: np.ndarray
    status: str  # "completed" or "domain-exit"

    def __len__(self):
        return len(self.t)


def default_config(**policy_kwargs) -> ModelConfig:
    return ModelConfig(policy=Policy(**policy_kwargs))


def feasible_u_min(p: MatchingParams) -> float:
    """Smallest unemployment rate with ``u + v(u) < 1`` (exclusive)."""
    us = p.u_star
    return 2 * us**2 / (1 + math.sqrt(1 - 4 * us**2))


def _check_state_u(u, p: MatchingParams) -> None:
    u = np.asarray(u, dtype=float)
    if np.any(~np.isfinite(u)) or np.any(u <= 0) or np.any(u >= 0.5):
        raise OutOfDomainError("unemployment rate must lie in (0, 1/2)")
    if np.any(u + p.u_star**2 / u >= 1):
        raise InfeasibleError("u + v(u) >= 1")


def phillips_bracket(u, p: MatchingParams):
    """Labor-market inefficiency term of the Phillips equation."""
    _check_state_u(u, p)
    u = np.asarray(u, dtype=float)
    v = p.u_star**2 / u
    out = 1.0 - (u / v) * (1.0 - u - v) / (1.0 - 2.0 * u)
    return float(out) if np.ndim(out) == 0 else out


def price_adjustment_cost(pi: float, prefs: Preferences) -> float:
    """Flow disutility of inflation departing from the norm."""
    gap = pi - prefs.pi_star
    kappa = prefs.kappa_minus if gap < 0 else prefs.kappa_plus
    return 0.5 * kappa * gap**2


def efficient_nominal_rate(config: ModelConfig) -> NominalRate:
    pr = config.prefs
    value = pr.pi_star + pr.delta - pr.sigma * (1 - config.u_star) * pr.labor_force
    return NominalRate(value, value < 0)


def euler_rhs(state: EconomyState, config: ModelConfig) -> float:
    """Time derivative of unemployment."""
    u, pi = state.u, state.pi
    _check_state_u(u, config.matching)
    pr = config.prefs
    i = config.policy_rate(pi)
    return (1 - u) * (pr.delta - (i - pi + pr.sigma * (1 - u) * pr.labor_force))


def phillips_rhs(state: EconomyState, config: ModelConfig, kappa: Optional[float] = None) -> float:
    """Time derivative of inflation; ``kappa`` overrides branch selection."""
    if kappa is None:
        kappa = config.kappa_for(state.pi)
    pr = config.prefs
    return pr.delta * (state.pi - pr.pi_star) - phillips_bracket(state.u, config.matching) / kappa


def horizontal_euler_pi(config: ModelConfig) -> Optional[float]:
    """Inflation on the Euler locus when there is no wealth in the utility.

    The locus is ``pi = i - delta``; under a Taylor rule this pins down a
    single inflation rate unless ``phi == 1``.
    """
    pr, pol = config.prefs, config.policy
    if pol.phi == 1:
        return None
    pi = (config.intercept - pol.phi * pr.pi_star - pr.delta) / (1 - pol.phi)
    if pol.enforce_zlb and config.policy_rate(pi) == 0.0:
        pi = -pr.delta
    return pi


def euler_curve_u(pi: float, config: ModelConfig) -> float:
    """Unemployment on the steady-state Euler locus at inflation ``pi``."""
    pr = config.prefs
    if pr.sigma == 0:
        level = horizontal_euler_pi(config)
        raise DegenerateCurveError(f"Euler locus is horizontal at pi = i - delta = {level}", pi_level=level)
    i = config.policy_rate(pi)
    return 1 - (pr.delta - i + pi) / (pr.sigma * pr.labor_force)


def phillips_curve_residual(state: EconomyState, config: ModelConfig) -> float:
    """``kappa delta (pi - pi_star) - bracket(u)``, zero on the Phillips curve."""
    pr = config.prefs
    kappa = config.kappa_for(state.pi)
    return kappa * pr.delta * (state.pi - pr.pi_star) - phillips_bracket(state.u, config.matching)


def phillips_curve_pi(u, config: ModelConfig):
    """Inflation on the steady-state Phillips curve at unemployment ``u``."""
    pr = config.prefs
    b = np.asarray(phillips_bracket(u, config.matching))
    kappa = np.where(b < 0, pr.kappa_minus, pr.kappa_plus)
    out = pr.pi_star + b / (kappa * pr.delta)
    return float(out) if np.ndim(out) == 0 else out


def phillips_curve_u(pi: float, config: ModelConfig) -> float:
    """Unemployment on the steady-state Phillips curve at inflation ``pi``.

    The bracket decreases strictly from 1 to minus infinity across the
    feasible range, so the root is unique whenever ``kappa delta (pi - pi*)``
    is below 1.
    """
    pr = config.prefs
    target = config.kappa_for(pi) * pr.delta * (pi - pr.pi_star)
    if target >= 1:
        raise NoSolutionError("inflation too high for any feasible unemployment rate")
    p = config.matching
    lo = feasible_u_min(p) * (1 + 1e-12)
    hi = 0.5 * (1 - 1e-12)
    return bisect(lambda u: phillips_bracket(u, p) - target, lo, hi, xtol=0.0)


def steady_state(config: ModelConfig, guess: Optional[float] = None, half_width: float = 1.0,
                 samples: int = 20001) -> EconomyState:
    """Intersection of the nonlinear Euler and Phillips curves.

    Scans inflation over ``guess +- half_width`` for sign changes of the
    Phillips residual along the Euler curve, and refines the crossing closest
    to ``guess`` (default: the inflation norm) by bisection.
    """
    pr, p = config.prefs, config.matching
    if guess is None:
        guess = pr.pi_star
    if pr.sigma == 0:
        level = horizontal_euler_pi(config)
        if level is None:
            raise DegenerateCurveError("Euler locus is degenerate (sigma = 0, phi = 1)")
        return EconomyState(phillips_curve_u(level, config), level)
    if config.policy.phi == 1 and not config.policy.enforce_zlb:
        # vertical Euler curve: unemployment does not depend on inflation
        u = euler_curve_u(pr.pi_star, config)
        return EconomyState(u, phillips_curve_pi(u, config))

    lo_u = feasible_u_min(p) + DOMAIN_MARGIN
    hi_u = 0.5 - DOMAIN_MARGIN
    pis = np.linspace(guess - half_width, guess + half_width, samples)
    i = np.asarray(config.policy_rate(pis))
    us = 1 - (pr.delta - i + pis) / (pr.sigma * pr.labor_force)
    valid = (us > lo_u) & (us < hi_u)
    if not np.any(valid):
        raise NoSolutionError("Euler curve never enters the model domain")
    g = np.full_like(pis, np.nan)
    b = phillips_bracket(us[valid], p)
    kappa = np.where(pis[valid] < pr.pi_star, pr.kappa_minus, pr.kappa_plus)
    g[valid] = kappa * pr.delta * (pis[valid] - pr.pi_star) - b
    sign_change = np.nonzero(valid[:-1] & valid[1:] & (np.sign(g[:-1]) != np.sign(g[1:])))[0]
    if sign_change.size == 0:
        raise NoSolutionError("Euler and Phillips curves do not intersect in the scanned window")
    k = sign_change[np.argmin(np.abs(pis[sign_change] - guess))]

    def resid(pi):
        return phillips_curve_residual(EconomyState(euler_curve_u(pi, config), pi), config)

    pi = bisect(resid, pis[k], pis[k + 1], xtol=0.0)
    return EconomyState(float(euler_curve_u(pi, config)), float(pi))


def _in_domain(u: float, p: MatchingParams) -> bool:
    return feasible_u_min(p) + DOMAIN_MARGIN < u < 0.5 - DOMAIN_MARGIN


def integrate(state0: EconomyState, config: ModelConfig, t_end: float, dt: float = 1e-3) -> Trajectory:
    """Fixed-step RK4 trajectory of the nonlinear system.

    With asymmetric costs the Phillips branch is frozen during each step;
    a step that crosses the inflation norm is cut at the crossing time
    (found by bisection) and resumed on the other branch. A trajectory that
    leaves the domain stops early with status ``"domain-exit"``.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    p, pr = config.matching, config.prefs
    if not _in_domain(state0.u, p):
        raise OutOfDomainError(f"initial unemployment {state0.u} outside the model domain")
    kinked = pr.kinked

    def side_of(x):
        gap = x[1] - pr.pi_star
        if gap != 0:
            return 1 if gap > 0 else -1
        # on the norm: direction of motion is the same under either branch
        return -1 if phillips_bracket(x[0], p) > 0 else 1

    def make_rhs(kappa):
        def rhs(x):
            st = EconomyState(x[0], x[1])
            return np.array([euler_rhs(st, config), phillips_rhs(st, config, kappa=kappa)])
        return rhs

    def step(x, h, kappa):
        out = rk4_step(make_rhs(kappa), x, h)
        if not np.all(np.isfinite(out)):
            raise StepFailure(f"non-finite state after step from {x}")
        return out

    ts, xs = [0.0], [np.array([state0.u, state0.pi], dtype=float)]
    n_steps = int(math.ceil(t_end / dt - 1e-9))
    status = "completed"
    x, t = xs[0], 0.0
    for n in range(n_steps):
        t_next = min((n + 1) * dt, t_end)
        try:
            while t < t_next:
                h = t_next - t
                side = side_of(x) if kinked else 1
                kappa = pr.kappa_plus if side > 0 else pr.kappa_minus
                x_new = step(x, h, kappa)
                # a step starting on the norm that returns across it is a graze, not a crossing
                if kinked and x[1] != pr.pi_star and (x_new[1] - pr.pi_star) * side < 0:
                    h = bisect(lambda hh: step(x, hh, kappa)[1] - pr.pi_star, 0.0, h, xtol=1e-15 * dt)
                    x_new = step(x, h, kappa)
                    x_new[1] = pr.pi_star
                    t = t + h
                    ts.append(t)
                else:
                    t = t_next
                    ts.append(t)
                x = x_new
                xs.append(x)
                if not _in_domain(x[0], p):
                    raise OutOfDomainError("left domain")
        except (OutOfDomainError, InfeasibleError):
            status = "domain-exit"
            break
    arr = np.array(xs)
    return Trajectory(np.array(ts), arr[:, 0], arr[:, 1], status)
