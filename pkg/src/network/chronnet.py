"""Chronnet data structure."""
import math
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Dict, Iterable, Optional, Tuple

import networkx as nx

from src.grid import CellId, GridSpec

Link = Tuple[CellId, CellId]


class ConstructionError(ValueError):
    """Raised for invalid construction, pruning or projection requests."""


@dataclass(frozen=True)
class ChronnetMeta:
    """Construction parameters carried with a chronnet.

    tau and keep_fraction record the pruning applied so far; window is the
    half-open [t_start, t_end) span of a snapshot.
    """
    h: Optional[int] = 1
    d_max: float = math.inf
    tau: Optional[float] = None
    keep_fraction: Optional[float] = None
    window: Optional[Tuple[float, float]] = None


@dataclass(frozen=True)
class Chronnet:
    """Weighted graph over grid cells, self-loops allowed.

    Weights map (u, v) to a positive integer. Undirected chronnets store each
    unordered pair once as (min, max). Instances are immutable; every
    transformation returns a new Chronnet.
    """
    directed: bool
    nodes: Tuple[CellId, ...]
    weights: Mapping = field(default_factory=dict)
    grid: Optional[GridSpec] = None
    meta: ChronnetMeta = field(default_factory=ChronnetMeta)

    def __post_init__(self):
        nodes = tuple(sorted(int(n) for n in set(self.nodes)))
        node_set = set(nodes)
        weights: Dict[Link, int] = {}
        for (u, v), w in sorted(dict(self.weights).items()):
            u, v = int(u), int(v)
            if w != int(w) or int(w) < 1:
                raise ConstructionError(f"Link ({u}, {v}) has invalid weight {w}; weights must be integers >= 1")
            if u not in node_set or v not in node_set:
                raise ConstructionError(f"Link ({u}, {v}) has an endpoint outside the node set")
            if not self.directed and u > v:
                raise ConstructionError(f"Undirected link ({u}, {v}) must be stored as (min, max)")
            weights[(u, v)] = int(w)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", MappingProxyType(weights))

    def __hash__(self):
        return hash((self.directed, self.nodes, tuple(self.weights.items()), self.grid, self.meta))

    def with_meta(self, **changes) -> "Chronnet":
        return replace(self, meta=replace(self.meta, **changes))

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)


def total_weight(c: Chronnet) -> int:
    return sum(c.weights.values())


def n_links(c: Chronnet) -> int:
    return len(c.weights)


def link_fraction(c: Chronnet, original: Chronnet) -> float:
    """Share of the original chronnet's links still present in c."""
    base = n_links(original)
    return n_links(c) / base if base else 0.0


def neighbors(c: Chronnet) -> Dict[CellId, Dict[CellId, int]]:
    """Undirected adjacency (self-loops excluded) with summed weights."""
    adj: Dict[CellId, Dict[CellId, int]] = {n: {} for n in c.nodes}
    for (u, v), w in c.weights.items():
        if u == v:
            continue
        adj[u][v] = adj[u].get(v, 0) + w
        adj[v][u] = adj[v].get(u, 0) + w
    return adj


def to_networkx(c: Chronnet, include_self_loops: bool = False, directed: Optional[bool] = None) -> nx.Graph:
    """networkx view with a "weight" attribute and a "distance" attribute of 1 / weight.

    Directed chronnets map to DiGraph unless directed=False is requested, in
    which case reciprocal links are summed.
    """
    as_directed = c.directed if directed is None else directed
    if as_directed and not c.directed:
        raise ConstructionError("Cannot view an undirected chronnet as directed")
    graph = nx.DiGraph() if as_directed else nx.Graph()
    graph.add_nodes_from(c.nodes)
    for (u, v), w in c.weights.items():
        if u == v and not include_self_loops:
            continue
        if graph.has_edge(u, v):
            w += graph[u][v]["weight"]
        graph.add_edge(u, v, weight=w, distance=1.0 / w)
    return graph


def from_links(
    links: Iterable[Tuple[CellId, CellId, int]],
    nodes: Iterable[CellId],
    directed: bool = True,
    grid: Optional[GridSpec] = None,
    meta: Optional[ChronnetMeta] = None,
) -> Chronnet:
    """Build a Chronnet from (u, v, w) triples, summing repeated links."""
    weights: Dict[Link, int] = {}
    for u, v, w in links:
        key = (u, v) if directed else (min(u, v), max(u, v))
        weights[key] = weights.get(key, 0) + w
    return Chronnet(directed=directed, nodes=tuple(nodes), weights=weights, grid=grid, meta=meta or ChronnetMeta())
