"""Built-in scenario catalog.

Each entry pairs a pydantic parameter model with a builder, so command-line
overrides ("--param T=5000") are validated and coerced before building.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Literal, Type

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.generators.grids import (
    ScenarioError,
    block_grid,
    exponential_grid,
    power_law_grid,
    uniform_grid,
)
from src.generators.scenario import GaussianPeriod, GridPeriod, ScenarioSpec
from src.grid import GridSpec

logger = logging.getLogger(__name__)


class ScenarioParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int = 42
    mode: Literal["categorical", "bernoulli"] = "categorical"
    bernoulli_rate: float = Field(default=1.0, gt=0)


class WeightedGridParams(ScenarioParams):
    nx: int = Field(default=20, ge=1)
    ny: int = Field(default=20, ge=1)
    T: int = Field(default=10_000, ge=1)
    gamma: float = Field(default=2.0, gt=1)
    rate: float = Field(default=1.0, gt=0)


class DenseGridParams(WeightedGridParams):
    T: int = Field(default=50_000, ge=1)


class TwoClusterParams(ScenarioParams):
    alternations: int = Field(default=40, ge=1)
    events_per_alternation: int = Field(default=500, ge=1)
    sigma: float = Field(default=100.0, gt=0)
    n: int = Field(default=10, ge=1)
    extent: float = Field(default=1000.0, gt=0)


class FourPeriodParams(ScenarioParams):
    n: int = Field(default=30, ge=2)
    block: int = Field(default=5, ge=1)
    durations: List[int] = Field(default_factory=lambda: [2400, 2400, 3600, 3600])
    background: float = Field(default=0.01, ge=0, lt=1)
    guard: int = Field(default=3, ge=0)

    @model_validator(mode="after")
    def _check(self) -> "FourPeriodParams":
        if len(self.durations) != 4 or min(self.durations) < 1:
            raise ValueError("durations must list four positive period lengths")
        if 2 * self.block > self.n:
            raise ValueError("four corner blocks must not overlap (2 * block <= n)")
        if 2 * self.guard > min(self.durations):
            raise ValueError("guard must fit twice into every period (2 * guard <= duration)")
        return self


class ThreeRegionParams(ScenarioParams):
    n: int = Field(default=30, ge=1)
    sigma: float = Field(default=1.5, gt=0)
    segments: int = Field(default=12, ge=1)
    segment_length: int = Field(default=400, ge=1)


def _square(n: int, extent: float) -> GridSpec:
    return GridSpec.rect(n, n, (0.0, extent, 0.0, extent))


def _weighted(name: str, factory: Callable, description: str) -> Callable[[WeightedGridParams], ScenarioSpec]:
    def build(p: WeightedGridParams) -> ScenarioSpec:
        grid = GridSpec.rect(p.nx, p.ny, (0.0, float(p.nx), 0.0, float(p.ny)))
        return ScenarioSpec(
            name=name,
            grid=grid,
            periods=[GridPeriod(factory(p), p.T)],
            rng_seed=p.seed,
            mode=p.mode,
            bernoulli_rate=p.bernoulli_rate,
            description=description,
            params=p.model_dump(),
        )
    return build


def _two_cluster(p: TwoClusterParams) -> ScenarioSpec:
    centers = [(0.25 * p.extent, 0.25 * p.extent), (0.75 * p.extent, 0.75 * p.extent)]
    periods = [
        GaussianPeriod(centers[k % 2], p.sigma, p.events_per_alternation, region=str(k % 2 + 1))
        for k in range(p.alternations)
    ]
    return ScenarioSpec(
        name="two-cluster",
        grid=_square(p.n, p.extent),
        periods=periods,
        rng_seed=p.seed,
        description="Two Gaussian clusters alternating in time",
        params=p.model_dump(),
    )


def _four_period(p: FourPeriodParams) -> ScenarioSpec:
    b, far = p.block, p.n - p.block
    corners = [(0, 0, b, b), (far, 0, b, b), (0, far, b, b), (far, far, b, b)]
    periods = [
        GridPeriod(
            block_grid(p.n, p.n, corner, corners, p.background),
            duration,
            region=str(k + 1),
            core=block_grid(p.n, p.n, corner),
            guard=p.guard,
        )
        for k, (corner, duration) in enumerate(zip(corners, p.durations))
    ]
    return ScenarioSpec(
        name="four-period",
        grid=_square(p.n, float(p.n)),
        periods=periods,
        rng_seed=p.seed,
        mode=p.mode,
        bernoulli_rate=p.bernoulli_rate,
        description="Four corner blocks active in consecutive periods, with background outliers",
        params=p.model_dump(),
    )


def _three_region(p: ThreeRegionParams) -> ScenarioSpec:
    s = float(p.n)
    centers = [(0.25 * s, 0.25 * s), (0.75 * s, 0.25 * s), (0.5 * s, 0.75 * s)]
    periods = [
        GaussianPeriod(centers[k % 3], p.sigma, p.segment_length, region=str(k % 3 + 1))
        for k in range(p.segments)
    ]
    return ScenarioSpec(
        name="three-region",
        grid=_square(p.n, s),
        periods=periods,
        rng_seed=p.seed,
        description="Three Gaussian regions alternating in time",
        params=p.model_dump(),
    )


@dataclass
class ScenarioEntry:
    """A catalog entry."""
    name: str
    params_class: Type[ScenarioParams]
    builder: Callable
    description: str = ""


_CATALOG: Dict[str, ScenarioEntry] = {
    entry.name: entry
    for entry in [
        ScenarioEntry(
            "uniform", WeightedGridParams,
            _weighted("uniform", lambda p: uniform_grid(p.nx, p.ny), "Uniform probability grid"),
            "Uniform probability grid",
        ),
        ScenarioEntry(
            "power-law", WeightedGridParams,
            _weighted("power-law", lambda p: power_law_grid(p.nx, p.ny, p.gamma), "Radially ranked power-law grid"),
            "Radially ranked power-law grid",
        ),
        ScenarioEntry(
            "exponential", WeightedGridParams,
            _weighted("exponential", lambda p: exponential_grid(p.nx, p.ny, p.rate), "Radially ranked exponential grid"),
            "Radially ranked exponential grid",
        ),
        ScenarioEntry(
            "power-law-dense", DenseGridParams,
            _weighted("power-law-dense", lambda p: power_law_grid(p.nx, p.ny, p.gamma), "Power-law grid for the pruning study"),
            "Power-law grid with a longer run, used for the pruning study",
        ),
        ScenarioEntry("two-cluster", TwoClusterParams, _two_cluster, "Two alternating Gaussian clusters"),
        ScenarioEntry("four-period", FourPeriodParams, _four_period, "Four corner blocks in consecutive periods"),
        ScenarioEntry("three-region", ThreeRegionParams, _three_region, "Three alternating Gaussian regions"),
    ]
}


def scenario_names() -> List[str]:
    return list(_CATALOG.keys())


def make_scenario(name: str, **overrides) -> ScenarioSpec:
    """Build a catalog scenario with parameter overrides.

    Raises:
        ScenarioError: Unknown scenario name or invalid override.
    """
    entry = _CATALOG.get(name)
    if entry is None:
        raise ScenarioError(f"Unknown scenario '{name}'. Available: {scenario_names()}")
    try:
        params = entry.params_class(**overrides)
    except ValidationError as e:
        raise ScenarioError(f"Invalid parameters for scenario '{name}': {e}") from e
    logger.debug("Building scenario %s with %s", name, params.model_dump())
    return entry.builder(params)


def builtin_scenarios(seed: int = 42) -> Dict[str, ScenarioSpec]:
    """Every catalog scenario built with default parameters and the given seed."""
    return {name: make_scenario(name, seed=seed) for name in _CATALOG}
