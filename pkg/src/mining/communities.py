"""Community detection: greedy modularity agglomeration and label propagation.

Modularity uses link weights with self-loops excluded:
    Q = sum_c [ w_in(c) / W - (s(c) / 2W)^2 ]
with W the total non-self link weight, w_in(c) the weight inside c and s(c)
the summed strength (self-loops excluded) of c's nodes.
"""
import heapq
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Tuple

import numpy as np

from src.network import Chronnet, as_undirected, neighbors

logger = logging.getLogger(__name__)


class MiningError(ValueError):
    """Raised for invalid community, clustering or change-detection requests."""


@dataclass(frozen=True)
class Merge:
    """Community `right` merged into `left` (left < right), changing Q by dq to q."""
    left: int
    right: int
    dq: float
    q: float


@dataclass(frozen=True)
class Dendrogram:
    leaves: Tuple[int, ...]
    merges: Tuple[Merge, ...]
    q_initial: float
    method: str = "fast-greedy"

    @property
    def best_k(self) -> int:
        """Community count of the highest-Q cut (the earliest, finer one on ties)."""
        best_q, best_step = self.q_initial, 0
        for step, merge in enumerate(self.merges, start=1):
            if merge.q > best_q + 1e-12:
                best_q, best_step = merge.q, step
        return len(self.leaves) - best_step

    @property
    def best_q(self) -> float:
        return self.q_at(self.best_k)

    def q_at(self, k: int) -> float:
        steps = len(self.leaves) - k
        return self.q_initial if steps == 0 else self.merges[steps - 1].q


@dataclass(frozen=True)
class Partition:
    """Node -> community label (contiguous from 0, ordered by smallest member) and Q."""
    labels: Mapping[int, int]
    q: float
    method: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def n_communities(self) -> int:
        return len(set(self.labels.values()))

    def members(self) -> Dict[int, List[int]]:
        groups: Dict[int, List[int]] = {}
        for node in sorted(self.labels):
            groups.setdefault(self.labels[node], []).append(node)
        return groups


def _contiguous(raw: Mapping[int, int]) -> Dict[int, int]:
    """Relabel communities 0..k-1 in order of their smallest node."""
    mapping: Dict[int, int] = {}
    out = {}
    for node in sorted(raw):
        label = raw[node]
        if label not in mapping:
            mapping[label] = len(mapping)
        out[node] = mapping[label]
    return out


def modularity(c: Chronnet, labels: Mapping[int, int]) -> float:
    """Direct-summation weighted modularity (self-loops excluded)."""
    u = as_undirected(c)
    missing = [n for n in u.nodes if n not in labels]
    if missing:
        raise MiningError(f"Partition misses {len(missing)} node(s), e.g. {missing[0]}")
    total = 0.0
    inside: Dict[int, float] = {}
    strength: Dict[int, float] = {}
    for (a, b), w in u.weights.items():
        if a == b:
            continue
        total += w
        strength[labels[a]] = strength.get(labels[a], 0.0) + w
        strength[labels[b]] = strength.get(labels[b], 0.0) + w
        if labels[a] == labels[b]:
            inside[labels[a]] = inside.get(labels[a], 0.0) + w
    if total == 0:
        raise MiningError("Modularity undefined: no links between distinct nodes")
    return sum(inside.get(g, 0.0) / total - (s / (2 * total)) ** 2 for g, s in strength.items())


def fast_greedy(c: Chronnet) -> Dendrogram:
    """Agglomerative modularity maximization over the full merge sequence.

    Starts from singletons and repeatedly merges the linked pair with the
    largest dQ (ties: lowest label pair); the merged community keeps the lower
    label. When no linked pair is left, the two communities with the smallest
    degree share a merge next (ties: lowest label), which is the largest
    dQ = -2 a_i a_j among unlinked pairs, so every cut k = 1..n exists.

    Raises:
        MiningError: No link between distinct nodes.
    """
    u = as_undirected(c)
    adj = neighbors(u)
    total = sum(w for (a, b), w in u.weights.items() if a != b)
    if total == 0:
        raise MiningError("fast_greedy needs at least one link between distinct nodes")
    two_w = 2.0 * total

    a = {n: sum(nbrs.values()) / two_w for n, nbrs in adj.items()}
    dq: Dict[int, Dict[int, float]] = {
        n: {m: 2.0 * (w / two_w - a[n] * a[m]) for m, w in nbrs.items()} for n, nbrs in adj.items()
    }
    q = -sum(v * v for v in a.values())
    q_initial = q

    heap = [(-d, i, j) for i, row in dq.items() for j, d in row.items() if i < j]
    heapq.heapify(heap)
    alive = set(u.nodes)
    merges: List[Merge] = []

    def merge(i: int, j: int, delta: float) -> None:
        nonlocal q
        row_i, row_j = dq.pop(i), dq.pop(j)
        row_i.pop(j, None)
        row_j.pop(i, None)
        new_row: Dict[int, float] = {}
        for k in set(row_i) | set(row_j):
            if k in row_i and k in row_j:
                value = row_i[k] + row_j[k]
            elif k in row_i:
                value = row_i[k] - 2.0 * a[j] * a[k]
            else:
                value = row_j[k] - 2.0 * a[i] * a[k]
            new_row[k] = value
            dq[k].pop(i, None)
            dq[k].pop(j, None)
            dq[k][i] = value
            lo, hi = (i, k) if i < k else (k, i)
            heapq.heappush(heap, (-value, lo, hi))
        dq[i] = new_row
        a[i] += a.pop(j)
        alive.discard(j)
        q += delta
        merges.append(Merge(left=i, right=j, dq=delta, q=q))

    while heap:
        neg, i, j = heapq.heappop(heap)
        if i not in alive or j not in alive or dq[i].get(j) != -neg:
            continue
        merge(i, j, -neg)

    # Unlinked communities: dQ = -2 a_i a_j.
    shares = [(a[n], n) for n in alive]
    heapq.heapify(shares)
    while len(shares) > 1:
        (_, x), (_, y) = heapq.heappop(shares), heapq.heappop(shares)
        i, j = min(x, y), max(x, y)
        dq.setdefault(i, {})
        dq.setdefault(j, {})
        merge(i, j, -2.0 * a[i] * a[j])
        heapq.heappush(shares, (a[i], i))

    d = Dendrogram(leaves=tuple(u.nodes), merges=tuple(merges), q_initial=q_initial)
    logger.info("Fast greedy: %d merges, best cut k=%d (Q=%.4f)", len(merges), d.best_k, d.best_q)
    return d


def cut_dendrogram(d: Dendrogram, k: int) -> Partition:
    """Partition with k communities: the first n - k merges replayed."""
    n = len(d.leaves)
    if not 1 <= k <= n:
        raise MiningError(f"k must be in 1..{n}, got {k}")
    parent = {leaf: leaf for leaf in d.leaves}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for merge in d.merges[: n - k]:
        parent[find(merge.right)] = find(merge.left)
    labels = _contiguous({leaf: find(leaf) for leaf in d.leaves})
    return Partition(labels=labels, q=d.q_at(k), method=d.method)


def label_propagation(c: Chronnet, seed: int = 42, max_rounds_per_node: int = 100) -> Partition:
    """Asynchronous weighted label propagation.

    Each round visits the nodes in a seeded random order; a node takes the
    label with the largest summed link weight among its neighbors, keeping its
    own label when that label is among the best and otherwise choosing
    uniformly among the tied best. Stops after a round without changes.
    Nodes without neighbors keep their own label.

    Raises:
        MiningError: No links, or no convergence within max_rounds_per_node * n rounds.
    """
    u = as_undirected(c)
    adj = neighbors(u)
    if not any(adj.values()):
        raise MiningError("label_propagation needs at least one link between distinct nodes")
    rng = np.random.default_rng(seed)
    nodes = np.array(u.nodes, dtype=np.int64)
    labels = {int(n): int(n) for n in nodes}
    limit = max_rounds_per_node * len(nodes)

    for rounds in range(1, limit + 1):
        changed = 0
        for node in rng.permutation(nodes).tolist():
            nbrs = adj[node]
            if not nbrs:
                continue
            votes: Dict[int, float] = {}
            for other, w in nbrs.items():
                votes[labels[other]] = votes.get(labels[other], 0.0) + w
            top = max(votes.values())
            best = sorted(label for label, v in votes.items() if v == top)
            if labels[node] in best:
                continue
            labels[node] = best[0] if len(best) == 1 else int(rng.choice(best))
            changed += 1
        if changed == 0:
            break
    else:
        raise MiningError(f"Label propagation did not converge within {limit} rounds")

    final = _contiguous(labels)
    partition = Partition(labels=final, q=modularity(u, final), method="label-propagation",
                          extra={"rounds": rounds, "seed": seed})
    logger.info("Label propagation: %d communities after %d rounds (Q=%.4f)",
                partition.n_communities, rounds, partition.q)
    return partition


def best_partition(d: Dendrogram) -> Partition:
    return cut_dendrogram(d, d.best_k)
