"""Labor-market matching primitives.

The matching function ``h(U, V) = omega * sqrt(U V) - s U`` gives closed
forms for every trading rate as a function of tightness ``theta = V / U``.
Balanced flows tie unemployment and recruiting to tightness, and the
Beveridge curve is the rectangular hyperbola ``u v = (s / omega)**2``.

All rates are per year. Scalar functions also accept numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numerics import bisect
from .errors import InfeasibleError, InvalidParamsError, NoSolutionError, OutOfDomainError

# relative clamp below the pole of tau at the upper tightness bound
TAU_INVERSE_CLAMP = 1e-9
TAU_INVERSE_XTOL = 1e-12


@dataclass(frozen=True)
class MatchingParams:
    """Job-separation rate ``s`` and matching efficacy ``omega`` (per year)."""

    s: float = 0.04
    omega: float = 1.0

    def __post_init__(self):
        if not (self.s > 0 and self.omega > 0):
            raise InvalidParamsError(f"s and omega must be positive, got s={self.s}, omega={self.omega}")
        if not self.omega > 2 * self.s:
            raise InvalidParamsError(f"need omega > 2 s, got s={self.s}, omega={self.omega}")

    @property
    def u_star(self) -> float:
        return self.s / self.omega

    @property
    def theta_lower(self) -> float:
        return lower_tightness_bound(self)

    @property
    def theta_upper(self) -> float:
        return upper_tightness_bound(self)


@dataclass(frozen=True)
class TightnessBounds:
    lower: float
    upper: float


@dataclass(frozen=True)
class LaborMarketState:
    theta: float
    u: float
    v: float

    @classmethod
    def from_theta(cls, theta: float, p: MatchingParams) -> "LaborMarketState":
        _check_theta(theta, p, upper=True)
        return cls(theta=theta, u=float(unemployment_rate(theta, p)), v=float(recruiting_rate(theta, p)))


@dataclass(frozen=True)
class Allocation:
    u_star: float
    v_star: float
    theta_star: float

    @staticmethod
    def regime(u: float, v: float) -> str:
        if v > u:
            return "inefficiently-tight"
        if v < u:
            return "inefficiently-slack"
        return "efficient"


@dataclass(frozen=True)
class Elasticities:
    """Elasticities with respect to tightness (``demand`` is w.r.t. own price)."""

    f: float
    q: float
    u: float
    tau: float
    demand: float


def _check_theta(theta, p: MatchingParams, upper: bool = False) -> None:
    theta = np.asarray(theta, dtype=float)
    lo = lower_tightness_bound(p)
    # tolerate rounding when theta was built from lo itself
    if np.any(~np.isfinite(theta)) or np.any(theta < lo * (1 - 1e-14)):
        raise OutOfDomainError(f"tightness below lower bound {lo}")
    if upper and np.any(theta >= upper_tightness_bound(p)):
        raise OutOfDomainError(f"tightness at or above upper bound {upper_tightness_bound(p)}")


def _check_u(u) -> None:
    u = np.asarray(u, dtype=float)
    if np.any(~np.isfinite(u)) or np.any(u <= 0) or np.any(u > 0.5):
        raise OutOfDomainError("unemployment rate must lie in (0, 1/2]")


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def lower_tightness_bound(p: MatchingParams) -> float:
    """Tightness below which the matching function decreases in unemployment."""
    return 4.0 * (p.s / p.omega) ** 2


def upper_tightness_bound(p: MatchingParams) -> float:
    """Tightness at which the worker-finding rate falls to ``s``.

    Beyond it, recruiting can no longer replace separations and the
    recruiter-producer ratio is infinite.
    """
    lo = lower_tightness_bound(p)
    # 1 - sqrt(1 - lo) cancels badly for small lo; use lo / (1 + sqrt(1 - lo))
    root = lo / (1.0 + math.sqrt(1.0 - lo))
    return lo / root**2


def tightness_bounds(p: MatchingParams) -> TightnessBounds:
    return TightnessBounds(lower_tightness_bound(p), upper_tightness_bound(p))


def customer_finding_rate(theta, p: MatchingParams):
    _check_theta(theta, p)
    return _out(p.omega * np.sqrt(theta) - p.s)


def worker_finding_rate(theta, p: MatchingParams):
    _check_theta(theta, p)
    theta = np.asarray(theta, dtype=float)
    return _out(p.omega / np.sqrt(theta) - p.s / theta)


def unemployment_rate(theta, p: MatchingParams):
    _check_theta(theta, p)
    return _out(p.u_star / np.sqrt(theta))


def recruiting_rate(theta, p: MatchingParams):
    _check_theta(theta, p)
    return _out(p.u_star * np.sqrt(theta))


def beveridge_v_of_u(u, p: MatchingParams):
    """Recruiting rate on the Beveridge curve at unemployment ``u``."""
    _check_u(u)
    return _out(p.u_star**2 / np.asarray(u, dtype=float))


def tightness_of_u(u, p: MatchingParams):
    """Inverse of :func:`unemployment_rate`."""
    _check_u(u)
    return _out((p.u_star / np.asarray(u, dtype=float)) ** 2)


def recruiter_producer_ratio(theta, p: MatchingParams):
    """Recruiters per producer needed to sustain hiring at tightness ``theta``."""
    _check_theta(theta, p, upper=True)
    q = np.asarray(worker_finding_rate(theta, p))
    return _out(p.s / (q - p.s))


def recruiter_producer_from_u(u, p: MatchingParams):
    v = np.asarray(beveridge_v_of_u(u, p))
    u = np.asarray(u, dtype=float)
    producers = 1.0 - u - v
    if np.any(producers <= 0):
        raise InfeasibleError("u + v(u) >= 1: no producers left")
    return _out(v / producers)


def tau_inverse(target: float, p: MatchingParams, xtol: float = TAU_INVERSE_XTOL) -> float:
    """Tightness at which the recruiter-producer ratio equals ``target``.

    Solved by bisection on ``[theta_lower, theta_upper (1 - 1e-9)]``. Targets
    beyond the clamped upper bracket return the clamp itself.
    """
    lo = lower_tightness_bound(p)
    hi = upper_tightness_bound(p) * (1.0 - TAU_INVERSE_CLAMP)
    if not math.isfinite(target) or target < 0:
        raise NoSolutionError(f"recruiter-producer target must be finite and non-negative, got {target}")
    tau_lo = recruiter_producer_ratio(lo, p)
    if target < tau_lo:
        raise NoSolutionError(f"target {target} below tau(theta_lower) = {tau_lo}")
    if target >= recruiter_producer_ratio(hi, p):
        return hi
    return bisect(lambda th: recruiter_producer_ratio(th, p) - target, lo, hi, xtol=xtol)


def demand_tightness(p_own: float, p_agg: float, theta_agg: float, p: MatchingParams) -> float:
    """Local tightness a seller faces when pricing at ``p_own``.

    Directed search equalizes ``price * (1 + tau(theta))`` across sellers, so
    undercutting the aggregate price raises local tightness.
    """
    _check_theta(theta_agg, p, upper=True)
    one_plus_tau = 1.0 + recruiter_producer_ratio(theta_agg, p)
    if not (p_agg > 0 and 0 < p_own < p_agg * one_plus_tau):
        raise OutOfDomainError(f"own price {p_own} outside (0, {p_agg * one_plus_tau})")
    if p_own == p_agg:
        return float(theta_agg)
    return tau_inverse((p_agg / p_own) * one_plus_tau - 1.0, p)


def elasticities(theta: float, p: MatchingParams) -> Elasticities:
    _check_theta(theta, p, upper=True)
    u = unemployment_rate(theta, p)
    v = recruiting_rate(theta, p)
    tau = recruiter_producer_ratio(theta, p)
    e_f = 0.5 / (1.0 - u)
    # the demand curve is vertical at the lower bound, where u = 1/2
    demand = -(1.0 - u) / (tau * (0.5 - u)) if u < 0.5 else -math.inf
    return Elasticities(
        f=e_f,
        q=e_f - 1.0,
        u=-0.5,
        tau=0.5 * (1.0 - 2.0 * u) / (1.0 - u - v),
        demand=demand,
    )


def efficient_allocation(p: MatchingParams) -> Allocation:
    """Allocation minimizing ``u + v(u)`` along the Beveridge curve."""
    return Allocation(u_star=p.u_star, v_star=p.u_star, theta_star=1.0)
