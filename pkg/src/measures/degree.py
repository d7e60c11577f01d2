"""Degrees, strengths and their distributions.

Self-loop policy: a self-loop never counts toward degree and counts once
toward strength. Directed chronnets are measured on their undirected
projection unless a directed variant is asked for.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping

import numpy as np
import pandas as pd

from src.network import Chronnet, as_undirected

logger = logging.getLogger(__name__)


class MeasureError(ValueError):
    """Raised when a measure's preconditions fail (empty graph, no pairs, bad kind)."""


def degree(c: Chronnet) -> Dict[int, int]:
    """Number of distinct neighbors other than the node itself."""
    u = as_undirected(c)
    k = {n: 0 for n in u.nodes}
    for a, b in u.weights:
        if a != b:
            k[a] += 1
            k[b] += 1
    return k


def strength(c: Chronnet) -> Dict[int, int]:
    """Sum of incident link weights; a self-loop weight is added once."""
    u = as_undirected(c)
    s = {n: 0 for n in u.nodes}
    for (a, b), w in u.weights.items():
        s[a] += w
        if a != b:
            s[b] += w
    return s


@dataclass(frozen=True)
class DirectedDegrees:
    in_degree: Dict[int, int]
    out_degree: Dict[int, int]
    in_strength: Dict[int, int]
    out_strength: Dict[int, int]


def directed_degrees(c: Chronnet) -> DirectedDegrees:
    """In/out degree (self-loops excluded) and in/out strength (self-loops included)."""
    if not c.directed:
        raise MeasureError("directed_degrees needs a directed chronnet")
    zero = {n: 0 for n in c.nodes}
    k_in, k_out, s_in, s_out = dict(zero), dict(zero), dict(zero), dict(zero)
    for (a, b), w in c.weights.items():
        s_out[a] += w
        s_in[b] += w
        if a != b:
            k_out[a] += 1
            k_in[b] += 1
    return DirectedDegrees(k_in, k_out, s_in, s_out)


def distribution(values: Iterable[int]) -> Dict[int, float]:
    """Fraction of entries per distinct value, ascending; sums to 1."""
    values = list(values)
    if not values:
        raise MeasureError("Cannot build a distribution from an empty graph")
    counts = Counter(values)
    total = len(values)
    return {k: counts[k] / total for k in sorted(counts)}


def degree_distribution(v: Mapping[int, int]) -> Dict[int, float]:
    """P(k): fraction of nodes with degree k."""
    return distribution(v.values())


def strength_distribution(v: Mapping[int, int]) -> Dict[int, float]:
    return distribution(v.values())


def ccdf(values: Iterable[float]) -> pd.DataFrame:
    """Complementary cumulative table: value, P(X >= value)."""
    x = np.sort(np.asarray(list(values), dtype=np.float64))
    if x.size == 0:
        raise MeasureError("Cannot build a CCDF from no values")
    uniq, first = np.unique(x, return_index=True)
    return pd.DataFrame({"value": uniq, "ccdf": (x.size - first) / x.size})


def average_degree(c: Chronnet) -> float:
    """<k> = 2|E| / n over simple undirected links."""
    k = degree(c)
    if not k:
        raise MeasureError("Average degree of an empty graph is undefined")
    return sum(k.values()) / len(k)


def edge_density(c: Chronnet) -> float:
    """|E| / (n (n - 1) / 2) with self-loops excluded."""
    u = as_undirected(c)
    n = len(u.nodes)
    if n < 2:
        raise MeasureError(f"Edge density needs at least 2 nodes, got {n}")
    links = sum(1 for a, b in u.weights if a != b)
    return links / (n * (n - 1) / 2)
