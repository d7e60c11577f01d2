"""Tests for paths, structure and centralities."""
import itertools
import math

import numpy as np
import pytest

from src.measures import (
    CENTRALITY_KINDS,
    MeasureError,
    articulation_points,
    centrality,
    largest_component,
    path_stats,
    top_node,
    transitivity,
)
from src.network import Chronnet


def _undirected(weights, nodes=None):
    nodes = nodes if nodes is not None else {n for key in weights for n in key}
    return Chronnet(directed=False, nodes=tuple(nodes), weights=weights)


PATH = {(0, 1): 1, (1, 2): 1}
STAR = {(0, 1): 1, (0, 2): 1, (0, 3): 1, (0, 4): 1}
K4 = {(a, b): 1 for a in range(4) for b in range(4) if a < b}


def _random_graph(seed, n):
    rng = np.random.default_rng(seed)
    weights = {}
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < 0.15:
            weights[(a, b)] = int(rng.integers(1, 6))
    return _undirected(weights, nodes=range(n))


def _all_pairs(c, weighted):
    """Floyd-Warshall distances and BFS-layer shortest-path counts."""
    n = max(c.nodes) + 1
    dist = [[math.inf] * n for _ in range(n)]
    for i in c.nodes:
        dist[i][i] = 0.0
    adj = {i: set() for i in c.nodes}
    for (a, b), w in c.weights.items():
        if a == b:
            continue
        length = 1.0 / w if weighted else 1.0
        dist[a][b] = dist[b][a] = min(dist[a][b], length)
        adj[a].add(b)
        adj[b].add(a)
    for k, i, j in itertools.product(c.nodes, repeat=3):
        if dist[i][k] + dist[k][j] < dist[i][j]:
            dist[i][j] = dist[i][k] + dist[k][j]
    return dist, adj


def _oracle(c, kind):
    if kind == "degree":
        dist, adj = _all_pairs(c, False)
        return {i: float(len(adj[i])) for i in c.nodes}
    if kind in ("closeness", "weighted-closeness"):
        dist, _ = _all_pairs(c, kind == "weighted-closeness")
        scores = {}
        for i in c.nodes:
            total = sum(dist[i][j] for j in c.nodes if j != i and math.isfinite(dist[i][j]))
            scores[i] = 1.0 / total if total > 0 else 0.0
        return scores
    dist, adj = _all_pairs(c, False)
    sigma = {}
    for s in c.nodes:
        sigma[(s, s)] = 1
        order = sorted((j for j in c.nodes if math.isfinite(dist[s][j]) and j != s), key=lambda j: dist[s][j])
        for t in order:
            sigma[(s, t)] = sum(sigma[(s, u)] for u in adj[t] if dist[s][u] == dist[s][t] - 1)
    scores = {i: 0.0 for i in c.nodes}
    for s, t in itertools.combinations(c.nodes, 2):
        if not math.isfinite(dist[s][t]):
            continue
        for i in c.nodes:
            if i in (s, t):
                continue
            if dist[s][i] + dist[i][t] == dist[s][t]:
                scores[i] += sigma[(s, i)] * sigma[(i, t)] / sigma[(s, t)]
    return scores


class TestPathStats:
    """Tests for path_stats and components."""

    def test_path_graph(self):
        stats = path_stats(_undirected(PATH))
        assert stats.avg_path_length == pytest.approx(4 / 3)
        assert stats.diameter == 2
        assert stats.component_count == 1
        assert stats.largest_component_fraction == 1.0

    def test_complete_graph(self):
        stats = path_stats(_undirected(K4))
        assert stats.avg_path_length == 1.0
        assert stats.diameter == 1

    def test_self_loops_ignored(self):
        with_loop = dict(PATH)
        with_loop[(1, 1)] = 9
        assert path_stats(_undirected(with_loop)) == path_stats(_undirected(PATH))

    def test_weighted_uses_inverse_weights(self):
        stats = path_stats(_undirected({(0, 1): 2, (1, 2): 4}), weighted=True)
        assert stats.diameter == pytest.approx(0.75)

    def test_equal_weights_match_hop_counts(self):
        c = _undirected({key: 1 for key in STAR})
        assert path_stats(c, weighted=True).avg_path_length == path_stats(c).avg_path_length

    def test_disconnected_graph_uses_reachable_pairs(self):
        stats = path_stats(_undirected({(0, 1): 1, (2, 3): 1, (3, 4): 1}))
        assert stats.reachable_pairs == 2 + 6
        assert stats.component_count == 2
        assert stats.largest_component_fraction == pytest.approx(0.6)
        assert stats.avg_path_length == pytest.approx((2 + 8) / 8)

    def test_worker_count_does_not_change_result(self):
        c = _random_graph(1, 30)
        assert path_stats(c, workers=1) == path_stats(c, workers=4)

    def test_no_reachable_pair(self):
        with pytest.raises(MeasureError):
            path_stats(_undirected({}, nodes=(0, 1)))

    def test_needs_two_nodes(self):
        with pytest.raises(MeasureError):
            path_stats(_undirected({}, nodes=(0,)))

    def test_largest_component(self):
        assert largest_component(_undirected({(0, 1): 1, (2, 3): 1, (3, 4): 1})) == {2, 3, 4}


class TestStructure:
    """Tests for transitivity and articulation points."""

    def test_triangle(self):
        assert transitivity(_undirected({(0, 1): 1, (1, 2): 1, (0, 2): 1})) == 1.0

    def test_star(self):
        assert transitivity(_undirected(STAR)) == 0.0

    def test_no_triple(self):
        with pytest.raises(MeasureError):
            transitivity(_undirected({(0, 1): 1}, nodes=(0, 1, 2)))

    def test_barbell_articulation(self, two_cliques):
        assert articulation_points(two_cliques) == [4, 5]


class TestCentrality:
    """Tests for centrality scores."""

    def test_path_betweenness(self):
        assert centrality(_undirected(PATH), "betweenness") == {0: 0.0, 1: 1.0, 2: 0.0}

    def test_star_center_has_top_closeness(self):
        scores = centrality(_undirected(STAR), "closeness")
        assert top_node(scores) == 0
        assert scores[0] == pytest.approx(0.25)

    def test_complete_graph_betweenness_is_zero(self):
        assert set(centrality(_undirected(K4), "betweenness").values()) == {0.0}

    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("kind", CENTRALITY_KINDS)
    def test_matches_brute_force(self, seed, kind):
        c = _random_graph(seed, 12 + 4 * seed)
        got = centrality(c, kind)
        expected = _oracle(c, kind)
        assert got.keys() == expected.keys()
        for node in got:
            assert got[node] == pytest.approx(expected[node], rel=1e-9, abs=1e-12)

    def test_weighted_closeness_argmax_scale_invariant(self):
        c = _random_graph(3, 20)
        scaled = _undirected({k: 3 * w for k, w in c.weights.items()}, nodes=c.nodes)
        assert top_node(centrality(c, "weighted-closeness")) == top_node(centrality(scaled, "weighted-closeness"))

    def test_isolated_node_closeness_is_zero(self):
        assert centrality(_undirected(PATH, nodes=(0, 1, 2, 3)), "closeness")[3] == 0.0

    def test_unknown_kind(self):
        with pytest.raises(MeasureError):
            centrality(_undirected(PATH), "pagerank")

    def test_top_node_ties_go_to_lowest_id(self):
        assert top_node({3: 1.0, 1: 1.0, 2: 0.5}) == 1


def _random_connected_graph(seed, n):
    """Random spanning tree plus extra links, weights 1..5."""
    rng = np.random.default_rng(seed)
    weights = {}
    for b in range(1, n):
        a = int(rng.integers(0, b))
        weights[(a, b)] = int(rng.integers(1, 6))
    for a, b in itertools.combinations(range(n), 2):
        if (a, b) not in weights and rng.random() < 0.1:
            weights[(a, b)] = int(rng.integers(1, 6))
    return _undirected(weights, nodes=range(n))


@pytest.mark.acceptance
class TestCentralityAcceptance:
    """Every centrality kind on 100 random connected graphs with up to 30 nodes."""

    def test_matches_brute_force_on_connected_graphs(self):
        for seed in range(100):
            c = _random_connected_graph(1000 + seed, 5 + seed % 26)
            for kind in CENTRALITY_KINDS:
                got = centrality(c, kind)
                expected = _oracle(c, kind)
                assert got.keys() == expected.keys()
                for node in got:
                    assert got[node] == pytest.approx(expected[node], rel=1e-9, abs=1e-12), (seed, kind, node)
