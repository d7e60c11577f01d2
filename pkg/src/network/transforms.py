"""Pruning, projection and node removal."""
import logging
import math
from typing import Dict, Iterable

from src.network.chronnet import Chronnet, ConstructionError, Link, neighbors

logger = logging.getLogger(__name__)


def _with_weights(c: Chronnet, weights: Dict[Link, int], **meta) -> Chronnet:
    out = Chronnet(directed=c.directed, nodes=c.nodes, weights=weights, grid=c.grid, meta=c.meta)
    return out.with_meta(**meta) if meta else out


def prune(c: Chronnet, tau: float) -> Chronnet:
    """Drop every link (self-loops included) with weight <= tau; nodes stay."""
    if not (tau >= 0) or math.isinf(tau):
        raise ConstructionError(f"Pruning threshold tau must be finite and >= 0, got {tau!r}")
    kept = {k: w for k, w in c.weights.items() if w > tau}
    applied = tau if c.meta.tau is None else max(c.meta.tau, tau)
    logger.info("Pruned tau=%g: kept %d of %d links", tau, len(kept), len(c.weights))
    return _with_weights(c, kept, tau=float(applied))


def prune_quantile(c: Chronnet, keep_fraction: float) -> Chronnet:
    """Keep the ceil(keep_fraction * |E|) heaviest links; ties at the cutoff weight all stay."""
    if not (0 < keep_fraction <= 1):
        raise ConstructionError(f"keep_fraction must be in (0, 1], got {keep_fraction!r}")
    if not c.weights:
        return c.with_meta(keep_fraction=float(keep_fraction))
    ordered = sorted(c.weights.values(), reverse=True)
    count = max(1, math.ceil(keep_fraction * len(ordered) - 1e-9))
    cutoff = ordered[count - 1]
    kept = {k: w for k, w in c.weights.items() if w >= cutoff}
    logger.info("Kept top %.3g of links: %d of %d (cutoff weight %d)", keep_fraction, len(kept), len(ordered), cutoff)
    return _with_weights(c, kept, keep_fraction=float(keep_fraction))


def undirect(c: Chronnet) -> Chronnet:
    """Undirected projection: w{u,v} = w(u->v) + w(v->u), self-loops copied."""
    if not c.directed:
        raise ConstructionError("Chronnet is already undirected")
    weights: Dict[Link, int] = {}
    for (u, v), w in c.weights.items():
        key = (u, v) if u <= v else (v, u)
        weights[key] = weights.get(key, 0) + w
    return Chronnet(directed=False, nodes=c.nodes, weights=weights, grid=c.grid, meta=c.meta)


def as_undirected(c: Chronnet) -> Chronnet:
    """c itself when undirected, otherwise its projection."""
    return c if not c.directed else undirect(c)


def remove_nodes(c: Chronnet, nodes: Iterable[int]) -> Chronnet:
    """Drop the given nodes and every link touching them."""
    drop = {int(n) for n in nodes}
    weights = {k: w for k, w in c.weights.items() if k[0] not in drop and k[1] not in drop}
    kept_nodes = tuple(n for n in c.nodes if n not in drop)
    logger.info("Removed %d node(s)", len(c.nodes) - len(kept_nodes))
    return Chronnet(directed=c.directed, nodes=kept_nodes, weights=weights, grid=c.grid, meta=c.meta)


def remove_isolated(c: Chronnet) -> Chronnet:
    """Drop nodes without links to other nodes (a lone self-loop does not count)."""
    adj = neighbors(c)
    return remove_nodes(c, [n for n, nbrs in adj.items() if not nbrs])
