"""Linearization around the divine steady state and local classification.

Deviations are ``uh = u - u*`` and ``pih = pi - pi*``. The linear system is

    d/dt [uh, pih] = M [uh, pih],
    M = [[sigma y*, -(phi - 1)(1 - u*)],
         [2 (1 - u*) / (kappa u* (1 - 2 u*)), delta]],

with ``y* = (1 - u*) l``. Asymmetric adjustment costs give two versions of
the lower-left entry: the tight branch (``pih > 0``, ``kappa_plus``) and
the slack branch (``pih < 0``, ``kappa_minus``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dynamics import ModelConfig
from .errors import DegenerateSystemError, InvalidParamsError

DEGENERACY_RTOL = 1e-10

SOURCE = "source"
SPIRAL_SOURCE = "spiral-source"
SADDLE = "saddle"
SINK = "sink"
SPIRAL_SINK = "spiral-sink"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class LinearizedSystem:
    a11: float
    a12: float
    a21: float
    a22: float
    u_star: float
    pi_star: float
    phi: float
    sigma_l: float
    a21_slack: float
    kinked: bool = False

    @property
    def a21_tight(self) -> float:
        return self.a21

    @property
    def delta(self) -> float:
        return self.a22

    def matrix(self, branch: str = "tight") -> np.ndarray:
        return np.array([[self.a11, self.a12], [self._a21(branch), self.a22]])

    def _a21(self, branch: str) -> float:
        if branch == "tight":
            return self.a21
        if branch == "slack":
            return self.a21_slack
        raise ValueError(f"branch must be 'tight' or 'slack', got {branch!r}")

    def rhs(self, x) -> np.ndarray:
        """Piecewise-linear vector field; the branch follows the sign of ``pih``."""
        uh, pih = x
        a21 = self.a21_slack if pih < 0 else self.a21
        return np.array([self.a11 * uh + self.a12 * pih, a21 * uh + self.a22 * pih])


@dataclass(frozen=True)
class Classification:
    trace: float
    determinant: float
    discriminant: float
    kind: str
    eigenvalues: tuple
    eigenvectors: tuple  # real case: (v1, v2); complex case: (Re w, Im w)

    @property
    def is_source(self) -> bool:
        return self.kind in (SOURCE, SPIRAL_SOURCE)

    @property
    def complex(self) -> bool:
        return self.discriminant < 0


@dataclass(frozen=True)
class SigmaCondition:
    sigma_min: float
    holds: bool


@dataclass(frozen=True)
class Line:
    """The line ``cu * uh + cpi * pih = rhs`` in deviation coordinates."""

    cu: float
    cpi: float
    rhs: float = 0.0

    def pi_at(self, uh):
        return (self.rhs - self.cu * np.asarray(uh, dtype=float)) / self.cpi

    def u_at(self, pih):
        return (self.rhs - self.cpi * np.asarray(pih, dtype=float)) / self.cu


@dataclass(frozen=True)
class Nullclines:
    euler: Line
    phillips: dict  # branch name -> Line
    euler_slope: float  # d uh / d pih
    phillips_slopes: dict  # branch name -> d pih / d uh


def _phillips_coefficient(u_star: float, kappa: float) -> float:
    return 2 * (1 - u_star) / (kappa * u_star * (1 - 2 * u_star))


def linearize(config: ModelConfig) -> LinearizedSystem:
    """Jacobian of the Euler-Phillips system at ``(u*, pi*)``."""
    if config.policy.intercept is not None and not math.isclose(
            config.policy.intercept, config.i_star, rel_tol=1e-12, abs_tol=1e-14):
        raise InvalidParamsError("linearization needs the policy intercept at the efficient rate")
    if config.policy.enforce_zlb and config.i_star < 0:
        raise InvalidParamsError("divine steady state violates the zero lower bound")
    pr, us = config.prefs, config.u_star
    return LinearizedSystem(
        a11=pr.sigma * (1 - us) * pr.labor_force,
        a12=-(config.policy.phi - 1) * (1 - us),
        a21=_phillips_coefficient(us, pr.kappa_plus),
        a22=pr.delta,
        u_star=us,
        pi_star=pr.pi_star,
        phi=config.policy.phi,
        sigma_l=pr.sigma * pr.labor_force,
        a21_slack=_phillips_coefficient(us, pr.kappa_minus),
        kinked=pr.kinked,
    )


def sigma_condition(config: ModelConfig) -> SigmaCondition:
    """Smallest ``sigma`` keeping the determinant positive for every ``phi >= 0``.

    Uses ``kappa_plus``, the binding branch when costs are asymmetric.
    """
    pr, us = config.prefs, config.u_star
    sigma_min = 2 / (pr.kappa_plus * pr.delta * pr.labor_force) * (1 - us) / (us * (1 - 2 * us))
    return SigmaCondition(sigma_min, pr.sigma >= sigma_min)


def _eigenvector(m: np.ndarray, lam):
    a11, a12 = m[0]
    a21, a22 = m[1]
    c1 = np.array([a12, lam - a11])
    c2 = np.array([lam - a22, a21])
    v = c1 if np.linalg.norm(c1) >= np.linalg.norm(c2) else c2
    n = np.linalg.norm(v)
    if n == 0:
        # scalar matrix: every vector is an eigenvector
        return None
    return v / n


def classify(lin: LinearizedSystem, branch: str = "tight") -> Classification:
    m = lin.matrix(branch)
    tr = float(m[0, 0] + m[1, 1])
    det = float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    disc = tr * tr - 4 * det
    if disc >= 0:
        sq = math.sqrt(disc)
        r1 = 0.5 * (tr + math.copysign(sq, tr))
        r2 = det / r1 if r1 != 0 else 0.0
        mu = tuple(sorted((r1, r2)))
        vecs = [_eigenvector(m, lam) for lam in mu]
        if vecs[0] is None:
            vecs = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
        eigvals = (complex(mu[0]), complex(mu[1]))
        eigvecs = tuple(vecs)
    else:
        re, im = 0.5 * tr, 0.5 * math.sqrt(-disc)
        w = _eigenvector(m.astype(complex), complex(re, im))
        eigvals = (complex(re, im), complex(re, -im))
        eigvecs = (w.real.copy(), w.imag.copy())
    scale = max(abs(eigvals[0]), abs(eigvals[1]))
    if det == 0 or abs(eigvals[0] - eigvals[1]) <= DEGENERACY_RTOL * scale:
        kind = DEGENERATE
    elif det < 0:
        kind = SADDLE
    elif disc > 0:
        kind = SOURCE if tr > 0 else SINK
    elif tr > 0:
        kind = SPIRAL_SOURCE
    elif tr < 0:
        kind = SPIRAL_SINK
    else:
        kind = DEGENERATE  # center
    return Classification(tr, det, disc, kind, eigvals, eigvecs)


def linear_solution(lin: LinearizedSystem, x0, t, branch: str = "tight",
                    cls: Optional[Classification] = None) -> np.ndarray:
    """Closed-form solution of one linear branch from deviation ``x0``.

    Real eigenvalues: ``x(t) = c1 e^{mu1 t} v1 + c2 e^{mu2 t} v2``. Complex
    pair ``mu +- i beta`` with eigenvector ``v1 + i v2``:
    ``x(t) = e^{mu t} [v1, v2] R(beta t) c`` where ``R`` is the clockwise
    rotation ``[[cos, sin], [-sin, cos]]``. Returns shape ``(2,)`` for scalar
    ``t`` and ``(len(t), 2)`` otherwise.
    """
    if cls is None:
        cls = classify(lin, branch)
    if cls.kind == DEGENERATE:
        raise DegenerateSystemError("eigenvalues are not distinct")
    x0 = np.asarray(x0, dtype=float)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    basis = np.column_stack(cls.eigenvectors)
    c = np.linalg.solve(basis, x0)
    if not cls.complex:
        mu1, mu2 = cls.eigenvalues[0].real, cls.eigenvalues[1].real
        coef = np.column_stack([c[0] * np.exp(mu1 * t_arr), c[1] * np.exp(mu2 * t_arr)])
    else:
        mu, beta = cls.eigenvalues[0].real, cls.eigenvalues[0].imag
        cos, sin = np.cos(beta * t_arr), np.sin(beta * t_arr)
        growth = np.exp(mu * t_arr)
        coef = np.column_stack([growth * (cos * c[0] + sin * c[1]), growth * (-sin * c[0] + cos * c[1])])
    out = coef @ basis.T
    return out[0] if np.ndim(t) == 0 else out


def nullclines(lin: LinearizedSystem) -> Nullclines:
    """Steady-state loci of the linear system through the divine point."""
    euler = Line(cu=lin.sigma_l, cpi=-(lin.phi - 1))
    euler_slope = (lin.phi - 1) / lin.sigma_l if lin.sigma_l != 0 else math.copysign(math.inf, lin.phi - 1)
    phillips, slopes = {}, {}
    for branch, a21 in (("tight", lin.a21), ("slack", lin.a21_slack)):
        phillips[branch] = Line(cu=a21 / lin.delta, cpi=1.0)
        slopes[branch] = -a21 / lin.delta
    return Nullclines(euler, phillips, euler_slope, slopes)
