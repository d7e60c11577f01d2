"""Node centralities on the undirected simple graph (self-loops ignored)."""
import logging
from typing import Dict, Literal

import networkx as nx

from src.measures.degree import MeasureError, degree
from src.measures.paths import simple_graph
from src.network import Chronnet

logger = logging.getLogger(__name__)

CentralityKind = Literal["degree", "betweenness", "closeness", "weighted-closeness"]
KINDS = ("degree", "betweenness", "closeness", "weighted-closeness")


def _closeness(graph: nx.Graph, weighted: bool) -> Dict[int, float]:
    """1 / sum of distances to the reachable nodes; 0 for nodes reaching nobody."""
    scores = {}
    for node in graph.nodes:
        if weighted:
            lengths = nx.single_source_dijkstra_path_length(graph, node, weight="distance")
        else:
            lengths = nx.single_source_shortest_path_length(graph, node)
        total = sum(d for target, d in lengths.items() if target != node)
        scores[node] = 1.0 / total if total > 0 else 0.0
    return scores


def centrality(c: Chronnet, kind: str) -> Dict[int, float]:
    """Per-node centrality scores.

    degree: k_i. betweenness: sum over unordered pairs (j, k) of the share of
    shortest j-k paths through i (hop counts, not normalized). closeness and
    weighted-closeness: 1 / sum of hop or 1 / w distances within the node's
    component.

    Raises:
        MeasureError: Unknown kind.
    """
    if kind not in KINDS:
        raise MeasureError(f"Unknown centrality kind '{kind}'. Available: {list(KINDS)}")
    if kind == "degree":
        return {n: float(k) for n, k in degree(c).items()}
    graph = simple_graph(c)
    if kind == "betweenness":
        scores = nx.betweenness_centrality(graph, normalized=False, weight=None)
    else:
        scores = _closeness(graph, weighted=kind == "weighted-closeness")
    return {n: float(scores[n]) for n in sorted(scores)}


def top_node(scores: Dict[int, float]) -> int:
    """Highest-scoring node, lowest id on ties."""
    if not scores:
        raise MeasureError("No nodes to rank")
    return min(scores, key=lambda n: (-scores[n], n))
