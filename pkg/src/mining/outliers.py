"""High-degree / high-strength cells treated as outliers."""
import logging
import math
from dataclasses import dataclass
from typing import Literal, Tuple

from src.measures import degree, strength
from src.mining.communities import MiningError
from src.network import Chronnet

logger = logging.getLogger(__name__)

OutlierMetric = Literal["degree", "strength"]


@dataclass(frozen=True)
class OutlierSelection:
    nodes: Tuple[int, ...]
    metric: str
    top_fraction: float
    cutoff: float
    requested: int
    # True when cutoff ties pull in every node.
    degenerate: bool


def outlier_nodes(c: Chronnet, metric: str = "degree", top_fraction: float = 0.02) -> OutlierSelection:
    """Nodes in the top `top_fraction` by degree or strength.

    The requested count is floor(top_fraction * n), at least 1; every node
    tied with the value at that rank is included.
    """
    if metric not in ("degree", "strength"):
        raise MiningError(f"Unknown outlier metric '{metric}'. Available: ['degree', 'strength']")
    if not 0 < top_fraction < 1:
        raise MiningError(f"top_fraction must be in (0, 1), got {top_fraction!r}")
    values = degree(c) if metric == "degree" else strength(c)
    if not values:
        return OutlierSelection((), metric, top_fraction, math.nan, 0, False)

    requested = max(1, math.floor(top_fraction * len(values) + 1e-9))
    ranked = sorted(values.values(), reverse=True)
    cutoff = ranked[requested - 1]
    nodes = tuple(sorted(n for n, v in values.items() if v >= cutoff))
    degenerate = len(nodes) == len(values) and requested < len(values)
    if degenerate:
        logger.warning("Outlier cut at %s=%s ties every node; selection is degenerate", metric, cutoff)
    elif len(nodes) > requested:
        logger.info("Outlier cut ties: %d nodes selected for %d requested", len(nodes), requested)
    return OutlierSelection(nodes, metric, top_fraction, float(cutoff), requested, degenerate)
