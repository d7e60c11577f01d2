"""Transitivity and articulation points (self-loops and weights ignored)."""
import logging
from typing import List

import networkx as nx

from src.measures.degree import MeasureError
from src.measures.paths import simple_graph
from src.network import Chronnet

logger = logging.getLogger(__name__)


def transitivity(c: Chronnet) -> float:
    """3 x triangles / connected triples.

    Raises:
        MeasureError: Fewer than 3 nodes or no connected triple.
    """
    graph = simple_graph(c)
    if graph.number_of_nodes() < 3:
        raise MeasureError(f"Transitivity needs at least 3 nodes, got {graph.number_of_nodes()}")
    triples = sum(d * (d - 1) // 2 for _, d in graph.degree())
    if triples == 0:
        raise MeasureError("Transitivity undefined: no connected triple")
    return float(nx.transitivity(graph))


def articulation_points(c: Chronnet) -> List[int]:
    """Nodes whose removal increases the number of connected components."""
    return sorted(nx.articulation_points(simple_graph(c)))
