"""The labor market on its own: the Beveridge curve, how tightness maps into
unemployment and vacancies, and where the efficient allocation sits.

Run: python demos/01_labor_market.py
"""

import numpy as np

from beveridge_phillips import (
    MatchingParams,
    efficient_allocation,
    elasticities,
    recruiter_producer_ratio,
    recruiting_rate,
    tightness_bounds,
    unemployment_rate,
)

p = MatchingParams(s=0.04, omega=1.0)
bounds = tightness_bounds(p)
print(f"separation rate s = {p.s}, matching efficacy omega = {p.omega}")
print(f"tightness must lie in [{bounds.lower:.4f}, {bounds.upper:.1f})")

# Walk along the Beveridge curve. Unemployment and vacancies trade off one for
# one in logs, and the recruiter-producer ratio explodes near the upper bound.
print("\n theta      u        v      tau     E_demand")
for theta in (0.01, 0.25, 1.0, 4.0, 100.0, 600.0):
    e = elasticities(theta, p)
    print(f"{theta:7.2f}  {unemployment_rate(theta, p):.4f}  {recruiting_rate(theta, p):.4f}"
          f"  {recruiter_producer_ratio(theta, p):7.4f}  {e.demand:9.2f}")

# The efficient allocation minimizes idle workers plus workers busy recruiting.
alloc = efficient_allocation(p)
us = np.linspace(0.005, 0.2, 2000)
waste = us + p.u_star**2 / us
print(f"\nefficient u* = v* = {alloc.u_star}, theta* = {alloc.theta_star}")
print(f"grid minimum of u + v(u): u = {us[np.argmin(waste)]:.4f}")
