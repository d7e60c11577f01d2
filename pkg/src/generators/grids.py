"""Probability grids for the event generator.

Weights are laid out as a (ny, nx) matrix whose row-major flattening follows
rect CellId order (id = j * nx + i). Heavy-tailed grids are "ranked radially":
the heaviest weight sits at the cell nearest the grid center, the next
heaviest at the next nearest cell, and so on. Weights are deterministic
quantiles of the target distribution, not random draws.
"""
import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np
from scipy.stats import poisson


class ScenarioError(ValueError):
    """Raised for invalid generator inputs (probability grids, scenarios, ODE specs)."""


@dataclass(frozen=True)
class ProbabilityGrid:
    """Per-cell event weights; finite, non-negative and not all zero."""
    p: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=np.float64)
        if p.ndim != 2 or p.size == 0:
            raise ScenarioError(f"Probability grid must be a non-empty matrix, got shape {p.shape}")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise ScenarioError("Probability grid entries must be finite and non-negative")
        if p.sum() <= 0:
            raise ScenarioError("Probability grid is all zero")
        p.flags.writeable = False
        object.__setattr__(self, "p", p)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.p.shape

    @property
    def weights(self) -> np.ndarray:
        """Flattened weights in CellId order."""
        return self.p.reshape(-1)

    @property
    def probabilities(self) -> np.ndarray:
        w = self.weights
        return w / w.sum()


def radial_order(nx: int, ny: int) -> np.ndarray:
    """CellIds sorted by distance of their center from the grid center (ties by id)."""
    ids = np.arange(nx * ny)
    dx = (ids % nx + 0.5) - nx / 2.0
    dy = (ids // nx + 0.5) - ny / 2.0
    return np.lexsort((ids, np.round(dx * dx + dy * dy, 9)))


def _ranked(nx: int, ny: int, values: np.ndarray) -> ProbabilityGrid:
    """Place descending values on cells in radial order."""
    flat = np.empty(nx * ny, dtype=np.float64)
    flat[radial_order(nx, ny)] = np.sort(values)[::-1]
    return ProbabilityGrid(flat.reshape(ny, nx))


def _upper_quantiles(n: int) -> np.ndarray:
    # Survival levels (rank - 0.5) / n for ranks 1..n.
    return (np.arange(1, n + 1) - 0.5) / n


def uniform_grid(nx: int, ny: int) -> ProbabilityGrid:
    return ProbabilityGrid(np.ones((ny, nx)))


def power_law_grid(nx: int, ny: int, gamma: float = 2.0) -> ProbabilityGrid:
    """Pareto(gamma) quantiles: the rank-k cell weighs ((k - 0.5) / n) ** (-1 / (gamma - 1))."""
    if gamma <= 1:
        raise ScenarioError(f"power-law exponent must exceed 1, got {gamma}")
    return _ranked(nx, ny, _upper_quantiles(nx * ny) ** (-1.0 / (gamma - 1.0)))


def exponential_grid(nx: int, ny: int, rate: float = 1.0) -> ProbabilityGrid:
    """Exponential(rate) quantiles: the rank-k cell weighs -ln((k - 0.5) / n) / rate."""
    if rate <= 0:
        raise ScenarioError(f"exponential rate must be positive, got {rate}")
    return _ranked(nx, ny, -np.log(_upper_quantiles(nx * ny)) / rate)


def block_grid(
    nx: int,
    ny: int,
    active: Tuple[int, int, int, int],
    blocks: Iterable[Tuple[int, int, int, int]] = (),
    background: float = 0.0,
) -> ProbabilityGrid:
    """Uniform mass on an active block plus a uniform background elsewhere.

    Blocks are (i0, j0, width, height) in cell units. The active block carries
    1 - background of the mass; the background mass is spread over the cells
    outside the union of all blocks (the active one included).
    """
    if not 0 <= background < 1:
        raise ScenarioError(f"background mass must be in [0, 1), got {background}")
    in_active = np.zeros((ny, nx), dtype=bool)
    in_any = np.zeros((ny, nx), dtype=bool)
    for i0, j0, w, h in [active, *blocks]:
        if i0 < 0 or j0 < 0 or i0 + w > nx or j0 + h > ny or w < 1 or h < 1:
            raise ScenarioError(f"block {(i0, j0, w, h)} does not fit a {nx}x{ny} grid")
        in_any[j0:j0 + h, i0:i0 + w] = True
    i0, j0, w, h = active
    in_active[j0:j0 + h, i0:i0 + w] = True

    p = np.zeros((ny, nx))
    p[in_active] = (1.0 - background) / in_active.sum()
    outside = ~in_any
    if background > 0 and outside.any():
        p[outside] = background / outside.sum()
    return ProbabilityGrid(p)


def pruned_link_estimate(grid: ProbabilityGrid, ticks: int, tau: float) -> float:
    """Expected fraction of observed links whose Poisson-approximated weight exceeds tau.

    A rough planning aid for picking scenario sizes; link (u, v) has mean
    weight ticks * p_u * p_v.
    """
    probs = grid.probabilities
    lam = ticks * np.outer(probs, probs)
    observed = -np.expm1(-lam).sum()
    kept = poisson.sf(math.floor(tau), lam).sum()
    return float(kept / observed) if observed > 0 else 0.0
