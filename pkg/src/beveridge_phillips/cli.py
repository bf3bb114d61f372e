"""Command-line front end.

Exit codes: 0 success, 1 usage or configuration error, 2 model/solver
error (or a failed ``validate``), 3 file I/O error.
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import data, portrait, validation
from .config import ConfigError, load_config
from .dynamics import EconomyState, efficient_nominal_rate, integrate
from .errors import ModelError
from .linear import classify, linearize, sigma_condition
from .matching import efficient_allocation
from .scenarios import DEMAND_KINDS, SUPPLY_KINDS, Shock, run_scenario

EXIT_OK, EXIT_USAGE, EXIT_MODEL, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}") from None
    return a, b


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def cmd_steady(cfg, args, out):
    alloc = efficient_allocation(cfg.matching)
    rate = efficient_nominal_rate(cfg)
    print(f"u*={_fmt(alloc.u_star)}", file=out)
    print(f"v*={_fmt(alloc.v_star)}", file=out)
    print(f"theta*={_fmt(alloc.theta_star)}", file=out)
    print(f"i*={_fmt(rate.value)}", file=out)
    print(f"zlb_violation={str(rate.zlb_violation).lower()}", file=out)
    print(f"divine_point=({_fmt(cfg.u_star)}, {_fmt(cfg.prefs.pi_star)})", file=out)
    return EXIT_OK


def cmd_classify(cfg, args, out):
    lin = linearize(cfg.with_intercept(None))
    branches = ("tight", "slack") if lin.kinked else ("tight",)
    for b in branches:
        cls = classify(lin, b)
        m = lin.matrix(b)
        tag = f"[{b}] " if lin.kinked else ""
        print(f"{tag}M=[[{_fmt(m[0, 0])}, {_fmt(m[0, 1])}], [{_fmt(m[1, 0])}, {_fmt(m[1, 1])}]]", file=out)
        print(f"{tag}trace={_fmt(cls.trace)} det={_fmt(cls.determinant)} disc={_fmt(cls.discriminant)}", file=out)
        eig = ", ".join(f"{_fmt(e.real)}{e.imag:+.10g}i" for e in cls.eigenvalues)
        print(f"{tag}eigenvalues={eig}", file=out)
        print(f"{tag}kind={cls.kind}", file=out)
    cond = sigma_condition(cfg)
    print(f"sigma_min={_fmt(cond.sigma_min)} sigma_condition={'holds' if cond.holds else 'violated'}", file=out)
    return EXIT_OK


def cmd_phase(cfg, args, out):
    seeds = args.seed or []
    pp = portrait.phase_portrait(cfg, args.u_bounds, args.pi_bounds, (args.nu, args.npi), seeds,
                                 args.t_end, args.dt, linear=args.linear)
    paths = portrait.write_portrait(pp, args.out)
    signs = portrait.quadrant_signs(pp, cfg)
    for name, path in paths.items():
        print(f"{name}: {path}", file=out)
    for name, ok in signs.items():
        print(f"{name}={str(ok).lower()}", file=out)
    return EXIT_OK


def _write_trajectory(fh, traj):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["t", "u", "pi"])
    for row in zip(traj.t, traj.u, traj.pi):
        w.writerow([repr(float(v)) for v in row])


def cmd_simulate(cfg, args, out):
    traj = integrate(EconomyState(args.u0, args.pi0), cfg, args.t_end, args.dt)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            _write_trajectory(fh, traj)
    else:
        _write_trajectory(out, traj)
    print(f"status={traj.status} points={len(traj)}", file=sys.stderr)
    return EXIT_OK


def cmd_shock(cfg, args, out):
    res = run_scenario(cfg, Shock(args.kind, args.magnitude), recenter_intercept=args.recenter)
    rows = [
        ("kind", res.shock.kind), ("magnitude", _fmt(res.shock.magnitude)),
        ("policy_mode", res.policy_mode), ("branch", res.branch_used),
        ("u_star_before", _fmt(res.u_star_before)), ("u_star_after", _fmt(res.u_star_after)),
        ("u_before", _fmt(res.before.u)), ("pi_before", _fmt(res.before.pi)),
        ("u_after", _fmt(res.after.u)), ("pi_after", _fmt(res.after.pi)),
        ("u_gap", _fmt(res.u_gap)), ("pi_gap", _fmt(res.pi_gap)),
        ("tightness_gap", _fmt(res.tightness_gap)),
    ]
    if res.after_nonlinear is not None:
        rows += [("u_after_nonlinear", _fmt(res.after_nonlinear.u)),
                 ("pi_after_nonlinear", _fmt(res.after_nonlinear.pi))]
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow([k for k, _ in rows])
        w.writerow([v for _, v in rows])
    else:
        for k, v in rows:
            print(f"{k}={v}", file=out)
    return EXIT_OK


def cmd_gaps(cfg, args, out):
    gaps = data.compute_gaps(data.read_series_csv(args.index), data.read_series_csv(args.tightness), args.target)
    data.write_gaps_csv(args.out, gaps)
    print(f"gaps: {args.out} ({len(gaps)} months)", file=out)
    if args.quarterly:
        rows = data.quarterly_means(gaps)
        data.write_quarterly_csv(args.quarterly, rows)
        print(f"quarterly: {args.quarterly} ({len(rows)} quarters)", file=out)
    return EXIT_OK


def cmd_fit(cfg, args, out):
    fit = data.fit_kinked_line(data.read_gaps_csv(args.gaps), kink_at_origin=not args.free_intercept)
    print(f"slope_tight={_fmt(fit.slope_tight)} (n={fit.n_tight})", file=out)
    print(f"slope_slack={_fmt(fit.slope_slack)} (n={fit.n_slack})", file=out)
    print(f"intercept={_fmt(fit.intercept)}", file=out)
    print(f"rss={_fmt(fit.rss)} r_squared={_fmt(fit.r_squared)}", file=out)
    print(f"steeper_when_tight={str(fit.steeper_when_tight).lower()}", file=out)
    return EXIT_OK


def cmd_validate(cfg, args, out):
    results = validation.run_checks(cfg)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.detail}", file=out)
    return EXIT_OK if validation.all_passed(results) else EXIT_MODEL


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="TOML or JSON configuration file")
    common.add_argument("--set", action="append", default=[], metavar="SECTION.FIELD=VALUE",
                        help="override one configuration field (repeatable)")

    parser = _Parser(prog="bpc", description="Beveridgean Phillips-curve model tools")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("steady", parents=[common], help="efficient allocation, i* and divine point")
    sub.add_parser("classify", parents=[common], help="linearized matrix and stability class")

    p = sub.add_parser("phase", parents=[common], help="write phase-portrait CSV and SVG files")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--u-bounds", type=_pair, default=(0.02, 0.08))
    p.add_argument("--pi-bounds", type=_pair, default=(0.0, 0.04))
    p.add_argument("--nu", type=int, default=21)
    p.add_argument("--npi", type=int, default=21)
    p.add_argument("--seed", type=_pair, action="append", help="trajectory start 'u,pi' (repeatable)")
    p.add_argument("--t-end", type=float, default=20.0)
    p.add_argument("--dt", type=float, default=1e-2)
    p.add_argument("--linear", action="store_true", help="sample the linearized field")

    p = sub.add_parser("simulate", parents=[common], help="integrate a trajectory to CSV")
    p.add_argument("--u0", type=float, required=True)
    p.add_argument("--pi0", type=float, required=True)
    p.add_argument("--t-end", type=float, default=10.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--out", help="CSV path (default stdout)")

    p = sub.add_parser("shock", parents=[common], help="comparative statics of a permanent shock")
    p.add_argument("--kind", required=True, choices=DEMAND_KINDS + SUPPLY_KINDS)
    p.add_argument("--magnitude", type=float, required=True)
    p.add_argument("--recenter", action="store_true", help="let the policy intercept track the new i*")
    p.add_argument("--format", choices=("text", "csv"), default="text")

    p = sub.add_parser("gaps", parents=[common], help="inflation and tightness gaps from monthly CSVs")
    p.add_argument("--index", required=True, help="price index CSV (date,value)")
    p.add_argument("--tightness", required=True, help="tightness CSV (date,value)")
    p.add_argument("--target", type=float, default=data.DEFAULT_TARGET)
    p.add_argument("--out", required=True)
    p.add_argument("--quarterly", help="also write quarterly means to this path")

    p = sub.add_parser("fit", parents=[common], help="kinked least-squares fit of a gaps CSV")
    p.add_argument("--gaps", required=True)
    p.add_argument("--free-intercept", action="store_true", help="fit the level at the kink too")

    sub.add_parser("validate", parents=[common], help="run the invariant suite")
    return parser


COMMANDS = {
    "steady": cmd_steady, "classify": cmd_classify, "phase": cmd_phase, "simulate": cmd_simulate,
    "shock": cmd_shock, "gaps": cmd_gaps, "fit": cmd_fit, "validate": cmd_validate,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args.config, args.set)
        return COMMANDS[args.command](cfg, args, out)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ModelError, ValueError) as exc:
        print(f"model error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MODEL


if __name__ == "__main__":
    sys.exit(main())
