"""Unexpected permanent shocks. Because the steady state is a source, the
economy jumps straight from the old curve intersection to the new one.

Run: python demos/03_shocks.py
"""

from beveridge_phillips import (
    ModelConfig,
    Policy,
    Preferences,
    Shock,
    apply_demand_shock,
    apply_supply_shock,
    kink_asymmetry_report,
)


def show(title, res):
    print(f"{title}: u {res.before.u:.4f} -> {res.after.u:.4f}, pi {res.before.pi:.4f} -> {res.after.pi:.4f}"
          f"  (gaps {res.u_gap:+.4f}, {res.pi_gap:+.5f}; {res.branch_used})")


# Tighter money: a higher rate intercept lowers demand under either policy.
for phi in (1.5, 0.5):
    cfg = ModelConfig(policy=Policy(phi=phi))
    show(f"demand shock, phi={phi}", apply_demand_shock(cfg, Shock("demand-rate-intercept", 0.001)))

# Worse matching raises efficient unemployment. If the central bank keeps its
# old intercept, the economy ends up tighter than the new efficient level.
for phi in (1.5, 0.5):
    cfg = ModelConfig(policy=Policy(phi=phi))
    res = apply_supply_shock(cfg, Shock("supply-efficacy", -0.2))
    show(f"supply shock, phi={phi}", res)
    print(f"   efficient unemployment {res.u_star_before:.3f} -> {res.u_star_after:.3f}")
res = apply_supply_shock(ModelConfig(), Shock("supply-efficacy", -0.2), recenter_intercept=True)
show("supply shock, intercept tracks the new efficient rate", res)

# Cutting prices is costlier than raising them. The Phillips curve kinks and
# inflation responds more to stimulus than to restraint.
kinked = ModelConfig(prefs=Preferences(kappa_plus=60000, kappa_minus=120000))
rep = kink_asymmetry_report(kinked, 0.001)
print(f"\nkinked costs: pi gap {rep.pi_gap_expansionary:+.5f} after easing, "
      f"{rep.pi_gap_contractionary:+.5f} after tightening (ratio {rep.ratio:.4f})")
