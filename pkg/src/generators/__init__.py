"""Artificial event sources: probability-grid scenarios and chaotic trajectories."""
from src.generators.catalog import builtin_scenarios, make_scenario, scenario_names
from src.generators.grids import (
    ProbabilityGrid,
    ScenarioError,
    block_grid,
    exponential_grid,
    power_law_grid,
    pruned_link_estimate,
    radial_order,
    uniform_grid,
)
from src.generators.ode import OdeSpec, rk4_integrate, rk4_step, sample_trajectory
from src.generators.scenario import GaussianPeriod, GridPeriod, ScenarioSpec, generate_events

__all__ = [
    "GaussianPeriod",
    "GridPeriod",
    "OdeSpec",
    "ProbabilityGrid",
    "ScenarioError",
    "ScenarioSpec",
    "block_grid",
    "builtin_scenarios",
    "exponential_grid",
    "generate_events",
    "make_scenario",
    "power_law_grid",
    "pruned_link_estimate",
    "radial_order",
    "rk4_integrate",
    "rk4_step",
    "sample_trajectory",
    "scenario_names",
    "uniform_grid",
]
