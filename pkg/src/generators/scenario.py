"""Probability-grid event generator."""
import logging
from dataclasses import dataclass, field
from typing import List, Literal, Optional, Tuple, Union

import numpy as np

from src.events.models import EventSet
from src.generators.grids import ProbabilityGrid, ScenarioError
from src.grid import GridSpec, cell_centers

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridPeriod:
    """A stretch of ticks drawing cells from a probability grid.

    When `core` is set, the first and last `guard` ticks only emit events in
    cells where `core` has positive weight. Draws that land elsewhere are
    redrawn from `core`.
    """
    grid: ProbabilityGrid
    duration: int
    region: Optional[str] = None
    core: Optional[ProbabilityGrid] = None
    guard: int = 0


@dataclass(frozen=True)
class GaussianPeriod:
    """A stretch of ticks drawing continuous points around a center.

    Points are clipped to the scenario bbox; sigma is in data units.
    """
    center: Tuple[float, float]
    sigma: float
    duration: int
    region: Optional[str] = None


Period = Union[GridPeriod, GaussianPeriod]


@dataclass(frozen=True)
class ScenarioSpec:
    """Ordered periods over a generator grid.

    In "categorical" mode every tick emits exactly one event. In "bernoulli"
    mode every cell fires independently each tick with probability
    min(1, bernoulli_rate * p_cell), so several events can share a tick.
    """
    name: str
    grid: GridSpec
    periods: List[Period]
    rng_seed: int = 42
    mode: Literal["categorical", "bernoulli"] = "categorical"
    bernoulli_rate: float = 1.0
    description: str = ""
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.periods:
            raise ScenarioError(f"Scenario {self.name!r} has no periods")
        for k, period in enumerate(self.periods, start=1):
            if period.duration < 1:
                raise ScenarioError(f"Scenario {self.name!r}: period {k} duration must be >= 1")
            if isinstance(period, GridPeriod):
                if self.grid.kind != "rect" or period.grid.shape != (self.grid.ny, self.grid.nx):
                    raise ScenarioError(
                        f"Scenario {self.name!r}: period {k} grid shape {period.grid.shape} "
                        f"does not match generator grid {self.grid.describe()}"
                    )
                if period.guard < 0 or 2 * period.guard > period.duration:
                    raise ScenarioError(f"Scenario {self.name!r}: period {k} guard must be in [0, duration / 2]")
                if period.core is not None and period.core.shape != period.grid.shape:
                    raise ScenarioError(f"Scenario {self.name!r}: period {k} core grid shape does not match")
            elif period.sigma <= 0:
                raise ScenarioError(f"Scenario {self.name!r}: period {k} sigma must be positive")
        if self.mode == "bernoulli":
            if any(isinstance(p, GaussianPeriod) for p in self.periods):
                raise ScenarioError("Bernoulli mode requires probability-grid periods")
            if self.bernoulli_rate <= 0:
                raise ScenarioError("bernoulli_rate must be positive")

    @property
    def total_duration(self) -> int:
        return sum(p.duration for p in self.periods)


def _gaussian_points(rng: np.random.Generator, period: GaussianPeriod, bbox) -> Tuple[np.ndarray, np.ndarray]:
    xmin, xmax, ymin, ymax = bbox
    xy = rng.normal(loc=period.center, scale=period.sigma, size=(period.duration, 2))
    return np.clip(xy[:, 0], xmin, xmax), np.clip(xy[:, 1], ymin, ymax)


def _edge_ticks(period: GridPeriod) -> np.ndarray:
    g, n = period.guard, period.duration
    return np.r_[np.arange(g), np.arange(n - g, n)].astype(np.int64)


def _guard_edges(chosen: np.ndarray, period: GridPeriod, side: np.random.Generator) -> np.ndarray:
    """Redraw edge-tick cells that fall outside the period core."""
    if period.core is None or not period.guard:
        return chosen
    core = period.core.probabilities
    edges = _edge_ticks(period)
    stray = edges[core[chosen[edges]] <= 0]
    if stray.size:
        chosen = chosen.copy()
        chosen[stray] = side.choice(len(core), size=stray.size, p=core)
    return chosen


def generate_events(spec: ScenarioSpec) -> EventSet:
    """Sample events tick by tick (t = 1..T) from the active period.

    Grid periods place events at cell centers; Gaussian periods emit
    continuous coordinates. Every event carries its 1-based period and its
    region in attrs. The output is a deterministic function of the spec.
    """
    rng = np.random.default_rng(spec.rng_seed)
    centers = cell_centers(spec.grid) if any(isinstance(p, GridPeriod) for p in spec.periods) else None

    ts, xs, ys, periods, regions = [], [], [], [], []
    tick = 0
    for k, period in enumerate(spec.periods, start=1):
        ticks = np.arange(tick + 1, tick + period.duration + 1, dtype=np.int64)
        if isinstance(period, GaussianPeriod):
            x, y = _gaussian_points(rng, period, spec.grid.bbox)
            t = ticks
        elif spec.mode == "categorical":
            chosen = rng.choice(len(centers), size=period.duration, p=period.grid.probabilities)
            chosen = _guard_edges(chosen, period, np.random.default_rng([spec.rng_seed, k]))
            x, y = centers[chosen, 0], centers[chosen, 1]
            t = ticks
        else:
            probs = np.minimum(1.0, spec.bernoulli_rate * period.grid.probabilities)
            fired = rng.random((period.duration, len(probs))) < probs
            if period.core is not None and period.guard:
                edges = _edge_ticks(period)
                fired[np.ix_(edges, period.core.probabilities <= 0)] = False
            tick_idx, cell_idx = np.nonzero(fired)
            x, y = centers[cell_idx, 0], centers[cell_idx, 1]
            t = ticks[tick_idx]
        ts.append(t)
        xs.append(x)
        ys.append(y)
        periods.append(np.full(len(t), str(k), dtype=object))
        region = period.region if period.region is not None else str(k)
        regions.append(np.full(len(t), region, dtype=object))
        tick += period.duration

    es = EventSet(
        np.concatenate(ts),
        np.concatenate(xs),
        np.concatenate(ys),
        {"period": np.concatenate(periods), "region": np.concatenate(regions)},
    )
    logger.info("Generated %d events for scenario %r (T=%d, seed=%d)", len(es), spec.name, tick, spec.rng_seed)
    return es
