"""The Euler-Phillips system around the point where inflation is on target
and unemployment is efficient. Linearize, classify, and draw the phase
diagram for an active and a passive central bank.

Run: python demos/02_phase_diagram.py [output-dir]
"""

import sys
from pathlib import Path

from beveridge_phillips import (
    EconomyState,
    ModelConfig,
    Policy,
    classify,
    integrate,
    linearize,
    phase_portrait,
    sigma_condition,
    write_portrait,
)
from beveridge_phillips.portrait import quadrant_signs

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")

for label, phi in (("active", 1.5), ("passive", 0.5)):
    cfg = ModelConfig(policy=Policy(phi=phi))
    lin = linearize(cfg)
    cls = classify(lin)
    print(f"{label} policy (phi = {phi})")
    print(f"  M = {lin.matrix().round(6).tolist()}")
    print(f"  trace {cls.trace:.4f}, determinant {cls.determinant:.3e} -> {cls.kind}")

    # Every path leaves the steady state, so the economy only stays put if it
    # starts exactly there. A small nudge grows.
    tr = integrate(EconomyState(0.0402, 0.02), cfg, t_end=40.0, dt=0.01)
    print(f"  from u=0.0402: after {tr.t[-1]:.0f} years u={tr.u[-1]:.4f}, pi={tr.pi[-1]:.4f} ({tr.status})")

    pp = phase_portrait(cfg, (0.03, 0.05), (0.0195, 0.0205), (21, 21), seeds=[(0.0402, 0.02)], t_end=40.0)
    paths = write_portrait(pp, out / label)
    print(f"  arrows agree with the nullclines: {all(quadrant_signs(pp, cfg).values())}")
    print(f"  wrote {paths['svg']}")

cond = sigma_condition(ModelConfig())
print(f"\nsource for every phi >= 0 as long as sigma >= {cond.sigma_min:.5f} (here sigma = 0.03)")
