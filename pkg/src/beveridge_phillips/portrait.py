"""Phase portraits: vector field, nullclines and trajectories, written as
CSV (authoritative) and a minimal static SVG.

Output files in the target directory:

    field.csv              u,pi,du,dpi
    euler_nullcline.csv    u,pi
    phillips_tight.csv     u,pi    (u <= u*)
    phillips_slack.csv     u,pi    (u >= u*)
    trajectories.csv       traj,t,u,pi
    phase.svg
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dynamics import (
    DOMAIN_MARGIN,
    EconomyState,
    ModelConfig,
    euler_rhs,
    feasible_u_min,
    horizontal_euler_pi,
    integrate,
    phillips_curve_pi,
    phillips_rhs,
)
from .errors import OutOfDomainError
from .linear import linearize


@dataclass
class PhasePortrait:
    u: np.ndarray
    pi: np.ndarray
    du: np.ndarray
    dpi: np.ndarray
    euler_nullcline: np.ndarray  # (n, 2) columns u, pi
    phillips_nullclines: dict  # "tight"/"slack" -> (n, 2)
    trajectories: list = field(default_factory=list)
    linear: bool = False


def _check_bounds(config: ModelConfig, u_bounds, pi_bounds) -> None:
    lo = feasible_u_min(config.matching) + DOMAIN_MARGIN
    if not (lo < u_bounds[0] < u_bounds[1] < 0.5 - DOMAIN_MARGIN):
        raise OutOfDomainError(f"unemployment bounds {u_bounds} must lie inside ({lo}, 0.5)")
    if not pi_bounds[0] < pi_bounds[1]:
        raise ValueError("inflation bounds must be increasing")


def euler_nullcline(config: ModelConfig, u_bounds, pi_bounds, n: int = 201) -> np.ndarray:
    """Points of the steady-state Euler locus inside the window."""
    pr = config.prefs
    if pr.sigma == 0:
        level = horizontal_euler_pi(config)
        if level is None or not pi_bounds[0] <= level <= pi_bounds[1]:
            return np.empty((0, 2))
        us = np.linspace(*u_bounds, n)
        return np.column_stack([us, np.full(n, level)])
    pis = np.linspace(*pi_bounds, n)
    us = 1 - (pr.delta - np.asarray(config.policy_rate(pis)) + pis) / (pr.sigma * pr.labor_force)
    keep = (us >= u_bounds[0]) & (us <= u_bounds[1])
    return np.column_stack([us[keep], pis[keep]])


def phillips_nullclines(config: ModelConfig, u_bounds, pi_bounds, n: int = 201) -> dict:
    us = np.linspace(*u_bounds, n)
    ustar = config.u_star
    out = {}
    for branch, mask in (("tight", us <= ustar), ("slack", us >= ustar)):
        seg = us[mask]
        if ustar not in seg and u_bounds[0] <= ustar <= u_bounds[1]:
            seg = np.sort(np.append(seg, ustar))
        pis = np.asarray(phillips_curve_pi(seg, config)) if seg.size else np.empty(0)
        keep = (pis >= pi_bounds[0]) & (pis <= pi_bounds[1])
        out[branch] = np.column_stack([seg[keep], pis[keep]])
    return out


def phase_portrait(config: ModelConfig, u_bounds=(0.02, 0.08), pi_bounds=(0.0, 0.04), resolution=(21, 21),
                   seeds=(), t_end: float = 20.0, dt: float = 1e-2, linear: bool = False) -> PhasePortrait:
    """Sample the vector field on a ``resolution[0] x resolution[1]`` grid.

    With ``linear`` the field is the piecewise-linear system around the
    divine point (translated back to levels); otherwise the nonlinear one.
    Each seed ``(u, pi)`` adds one integrated trajectory.
    """
    _check_bounds(config, u_bounds, pi_bounds)
    uu, pp = np.meshgrid(np.linspace(*u_bounds, resolution[0]), np.linspace(*pi_bounds, resolution[1]))
    uu, pp = uu.ravel(), pp.ravel()
    if linear:
        lin = linearize(config.with_intercept(None))
        shift = config.intercept - config.i_star
        field_ = np.array([lin.rhs((u - lin.u_star, pi - lin.pi_star)) for u, pi in zip(uu, pp)])
        # a displaced policy intercept shifts the linear Euler equation
        field_[:, 0] -= (1 - lin.u_star) * shift
        du, dpi = field_[:, 0], field_[:, 1]
    else:
        du = np.array([euler_rhs(EconomyState(u, pi), config) for u, pi in zip(uu, pp)])
        dpi = np.array([phillips_rhs(EconomyState(u, pi), config) for u, pi in zip(uu, pp)])
    trajs = [integrate(EconomyState(float(u0), float(pi0)), config, t_end, dt) for u0, pi0 in seeds]
    return PhasePortrait(uu, pp, du, dpi, euler_nullcline(config, u_bounds, pi_bounds),
                         phillips_nullclines(config, u_bounds, pi_bounds), trajs, linear)


def quadrant_signs(portrait: PhasePortrait, config: ModelConfig, margin: float = 1e-9) -> dict:
    """Check arrow directions against the nullclines on the sampled grid.

    Returns booleans: inflation rises strictly above the Phillips curve and
    falls strictly below it; unemployment falls above the Euler curve under
    active policy (rises under passive policy) and the reverse below.
    """
    pi_phillips = np.asarray(phillips_curve_pi(portrait.u, config))
    above_p = portrait.pi > pi_phillips + margin
    below_p = portrait.pi < pi_phillips - margin
    out = {
        "pi_rising_above_phillips": bool(np.all(portrait.dpi[above_p] > 0)),
        "pi_falling_below_phillips": bool(np.all(portrait.dpi[below_p] < 0)),
    }
    pr, phi = config.prefs, config.policy.phi
    if pr.sigma > 0 and phi != 1 and not config.policy.enforce_zlb:
        # Euler locus as pi(u): sigma l (u - u*) - (phi - 1)(pi - pi*) = intercept - i*
        e = config.intercept - config.i_star
        pi_euler = pr.pi_star + (pr.sigma * pr.labor_force * (portrait.u - config.u_star) - e) / (phi - 1)
        above_e = portrait.pi > pi_euler + margin
        below_e = portrait.pi < pi_euler - margin
        sign = -1 if phi > 1 else 1
        out["u_direction_above_euler"] = bool(np.all(sign * portrait.du[above_e] > 0))
        out["u_direction_below_euler"] = bool(np.all(-sign * portrait.du[below_e] > 0))
    return out


def _write_rows(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, (int, str)) else repr(float(v)) for v in row])


def write_portrait(portrait: PhasePortrait, outdir) -> dict:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {
        "field": outdir / "field.csv",
        "euler": outdir / "euler_nullcline.csv",
        "phillips_tight": outdir / "phillips_tight.csv",
        "phillips_slack": outdir / "phillips_slack.csv",
        "trajectories": outdir / "trajectories.csv",
        "svg": outdir / "phase.svg",
    }
    _write_rows(paths["field"], ["u", "pi", "du", "dpi"],
                zip(portrait.u, portrait.pi, portrait.du, portrait.dpi))
    _write_rows(paths["euler"], ["u", "pi"], portrait.euler_nullcline)
    _write_rows(paths["phillips_tight"], ["u", "pi"], portrait.phillips_nullclines["tight"])
    _write_rows(paths["phillips_slack"], ["u", "pi"], portrait.phillips_nullclines["slack"])
    _write_rows(paths["trajectories"], ["traj", "t", "u", "pi"],
                ((k, t, u, pi) for k, tr in enumerate(portrait.trajectories) for t, u, pi in zip(tr.t, tr.u, tr.pi)))
    paths["svg"].write_text(render_svg(portrait))
    return paths


def render_svg(portrait: PhasePortrait, width: int = 600, height: int = 450, pad: int = 40) -> str:
    u0, u1 = float(portrait.u.min()), float(portrait.u.max())
    p0, p1 = float(portrait.pi.min()), float(portrait.pi.max())

    def xy(u, pi):
        x = pad + (u - u0) / (u1 - u0) * (width - 2 * pad)
        y = height - pad - (pi - p0) / (p1 - p0) * (height - 2 * pad)
        return x, y

    def polyline(pts, color, w=2.0):
        if len(pts) < 2:
            return ""
        coords = " ".join("%.2f,%.2f" % xy(u, pi) for u, pi in pts)
        return f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{w}"/>'

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        '<defs><marker id="a" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto">'
        '<path d="M0,0 L6,3 L0,6 z" fill="#777"/></marker></defs>',
        f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" fill="none" stroke="#000"/>',
    ]
    # arrows: direction only, fixed length in screen space
    sx = (width - 2 * pad) / (u1 - u0)
    sy = (height - 2 * pad) / (p1 - p0)
    for u, pi, du, dpi in zip(portrait.u, portrait.pi, portrait.du, portrait.dpi):
        vx, vy = du * sx, -dpi * sy
        norm = float(np.hypot(vx, vy))
        if norm == 0:
            continue
        x, y = xy(u, pi)
        parts.append('<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" stroke="#777" marker-end="url(#a)"/>'
                     % (x, y, x + 10 * vx / norm, y + 10 * vy / norm))
    parts.append(polyline(portrait.euler_nullcline, "#1f77b4"))
    parts.append(polyline(portrait.phillips_nullclines["tight"], "#d62728"))
    parts.append(polyline(portrait.phillips_nullclines["slack"], "#d62728"))
    for tr in portrait.trajectories:
        parts.append(polyline(list(zip(tr.u, tr.pi)), "#2ca02c", 1.5))
    parts.append(f'<text x="{width / 2:.0f}" y="{height - 8}" text-anchor="middle" font-size="12">u</text>')
    parts.append(f'<text x="12" y="{height / 2:.0f}" font-size="12">&#960;</text>')
    parts.append("</svg>")
    return "\n".join(p for p in parts if p) + "\n"
