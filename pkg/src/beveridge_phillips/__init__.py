"""Beveridgean Phillips-curve model: matching primitives, Euler-Phillips
dynamics, local stability analysis, comparative statics, and data tools."""

from .errors import *  # noqa: F401,F403
from .matching import (
    Allocation,
    Elasticities,
    LaborMarketState,
    MatchingParams,
    TightnessBounds,
    beveridge_v_of_u,
    customer_finding_rate,
    demand_tightness,
    efficient_allocation,
    elasticities,
    lower_tightness_bound,
    recruiter_producer_from_u,
    recruiter_producer_ratio,
    recruiting_rate,
    tau_inverse,
    tightness_bounds,
    tightness_of_u,
    unemployment_rate,
    upper_tightness_bound,
    worker_finding_rate,
)
from .dynamics import (
    EconomyState,
    ModelConfig,
    Policy,
    Preferences,
    Trajectory,
    default_config,
    efficient_nominal_rate,
    euler_curve_u,
    euler_rhs,
    integrate,
    phillips_bracket,
    phillips_curve_pi,
    phillips_curve_residual,
    phillips_curve_u,
    phillips_rhs,
    steady_state,
)
from .linear import (
    Classification,
    LinearizedSystem,
    SigmaCondition,
    classify,
    linear_solution,
    linearize,
    nullclines,
    sigma_condition,
)
from .scenarios import (
    ScenarioResult,
    Shock,
    apply_demand_shock,
    apply_supply_shock,
    kink_asymmetry_report,
    run_scenario,
    solve_intersection,
)
from .data import GapPoint, KinkedFit, SeriesPoint, compute_gaps, fit_kinked_line, read_series_csv
from .portrait import PhasePortrait, phase_portrait, write_portrait
from .config import load_config

__version__ = "0.1.0"
