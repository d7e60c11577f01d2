"""Shortest-path statistics and components.

Paths ignore self-loops. Weighted paths use edge length 1 / w, so strong
links are short.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Set, Tuple

import networkx as nx

from src.config import get_settings
from src.measures.degree import MeasureError
from src.network import Chronnet, as_undirected, to_networkx

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PathStats:
    avg_path_length: float
    diameter: float
    component_count: int
    largest_component_fraction: float
    reachable_pairs: int


def simple_graph(c: Chronnet) -> nx.Graph:
    """Undirected networkx graph without self-loops."""
    return to_networkx(as_undirected(c), include_self_loops=False)


def _source_lengths(graph: nx.Graph, source: int, weighted: bool) -> dict:
    if weighted:
        return nx.single_source_dijkstra_path_length(graph, source, weight="distance")
    return nx.single_source_shortest_path_length(graph, source)


def _partial(graph: nx.Graph, sources: List[int], weighted: bool) -> List[Tuple[float, float, int]]:
    """Per-source (sum of lengths, longest length, reachable targets)."""
    rows = []
    for source in sources:
        lengths = [d for target, d in sorted(_source_lengths(graph, source, weighted).items()) if target != source]
        rows.append((sum(lengths), max(lengths, default=0.0), len(lengths)))
    return rows


def path_stats(c: Chronnet, weighted: bool = False, workers: Optional[int] = None) -> PathStats:
    """Average shortest path and diameter over ordered reachable pairs.

    Sources are split into contiguous blocks and processed on a thread pool;
    partial sums are reduced in source order, so the result does not depend
    on the worker count.

    Raises:
        MeasureError: Fewer than 2 nodes or no reachable pair.
    """
    graph = simple_graph(c)
    n = graph.number_of_nodes()
    if n < 2:
        raise MeasureError(f"Path statistics need at least 2 nodes, got {n}")

    nodes = sorted(graph.nodes)
    workers = max(1, workers or get_settings().threads)
    size = -(-n // workers)
    blocks = [nodes[i:i + size] for i in range(0, n, size)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        partials = list(pool.map(lambda block: _partial(graph, block, weighted), blocks))

    rows = [row for block in partials for row in block]
    total = sum(row[0] for row in rows)
    diameter = max(row[1] for row in rows)
    pairs = sum(row[2] for row in rows)
    if pairs == 0:
        raise MeasureError("No reachable pair of distinct nodes")

    components = list(nx.connected_components(graph))
    largest = max(len(comp) for comp in components)
    stats = PathStats(
        avg_path_length=total / pairs,
        diameter=float(diameter),
        component_count=len(components),
        largest_component_fraction=largest / n,
        reachable_pairs=pairs,
    )
    logger.info(
        "Paths (%s): <l>=%.4f diameter=%g components=%d",
        "weighted" if weighted else "hops", stats.avg_path_length, stats.diameter, stats.component_count,
    )
    return stats


def largest_component(c: Chronnet) -> Set[int]:
    """Nodes of the largest connected component (ties: the one with the lowest node)."""
    graph = simple_graph(c)
    if graph.number_of_nodes() == 0:
        raise MeasureError("Empty graph has no components")
    components = sorted(nx.connected_components(graph), key=lambda comp: (-len(comp), min(comp)))
    return set(components[0])
