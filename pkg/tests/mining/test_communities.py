"""Tests for greedy modularity, dendrogram cuts and label propagation."""
import itertools

import numpy as np
import pytest

from src.mining import (
    MiningError,
    Partition,
    best_partition,
    cut_dendrogram,
    fast_greedy,
    label_propagation,
    modularity,
)
from src.network import Chronnet, neighbors

CLIQUES = {0: 0, 1: 0, 2: 0, 3: 0, 4: 0, 5: 1, 6: 1, 7: 1, 8: 1, 9: 1}


def _undirected(weights, nodes=None):
    nodes = nodes if nodes is not None else {n for key in weights for n in key}
    return Chronnet(directed=False, nodes=tuple(nodes), weights=weights)


def _clique(n):
    return _undirected({(a, b): 1 for a, b in itertools.combinations(range(n), 2)})


def _random_graph(seed, n=25, p=0.2):
    rng = np.random.default_rng(seed)
    weights = {
        (a, b): int(rng.integers(1, 8))
        for a, b in itertools.combinations(range(n), 2)
        if rng.random() < p
    }
    return _undirected(weights, nodes=range(n))


def _brute_modularity(c, labels):
    """Q from the adjacency-matrix definition (1 / 2W) sum_ij [A_ij - s_i s_j / 2W] delta(c_i, c_j)."""
    adj = neighbors(c)
    two_w = sum(sum(row.values()) for row in adj.values())
    s = {n: sum(row.values()) for n, row in adj.items()}
    total = 0.0
    for i in c.nodes:
        for j in c.nodes:
            if labels[i] == labels[j]:
                total += adj[i].get(j, 0) - s[i] * s[j] / two_w
    return total / two_w


class TestModularity:
    """Tests for the direct-summation modularity."""

    def test_two_cliques(self, two_cliques):
        assert modularity(two_cliques, CLIQUES) == pytest.approx(2 * (10 / 21 - 0.25))

    def test_single_community_is_zero(self, two_cliques):
        assert modularity(two_cliques, {n: 0 for n in range(10)}) == pytest.approx(0.0, abs=1e-12)

    def test_self_loops_ignored(self, two_cliques):
        weights = dict(two_cliques.weights)
        weights[(0, 0)] = 50
        looped = _undirected(weights)
        assert modularity(looped, CLIQUES) == pytest.approx(modularity(two_cliques, CLIQUES))

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_matrix_definition(self, seed):
        c = _random_graph(seed)
        labels = {n: int(n % 3) for n in c.nodes}
        assert modularity(c, labels) == pytest.approx(_brute_modularity(c, labels), abs=1e-12)

    def test_missing_node_raises(self, two_cliques):
        with pytest.raises(MiningError):
            modularity(two_cliques, {0: 0})

    def test_no_links_raises(self):
        with pytest.raises(MiningError):
            modularity(_undirected({}, nodes=(0, 1)), {0: 0, 1: 1})


class TestFastGreedy:
    """Tests for fast_greedy and cut_dendrogram."""

    def test_two_cliques_best_cut(self, two_cliques):
        d = fast_greedy(two_cliques)
        assert d.best_k == 2
        assert best_partition(d).labels == CLIQUES
        assert d.best_q == pytest.approx(2 * (10 / 21 - 0.25))

    def test_final_merge_lowers_q(self, two_cliques):
        d = fast_greedy(two_cliques)
        assert d.merges[-1].dq == pytest.approx(2 * (1 / 42 - 0.25))
        assert d.q_at(1) < d.q_at(2)

    def test_single_clique_stays_whole(self):
        d = fast_greedy(_clique(6))
        assert d.best_k == 1
        assert d.best_q == pytest.approx(0.0, abs=1e-12)

    def test_merge_sequence_is_complete(self, two_cliques):
        d = fast_greedy(two_cliques)
        assert len(d.merges) == 9
        assert all(m.left < m.right for m in d.merges)
        assert d.method == "fast-greedy"

    def test_cut_extremes(self, two_cliques):
        d = fast_greedy(two_cliques)
        assert cut_dendrogram(d, 1).n_communities == 1
        singletons = cut_dendrogram(d, 10)
        assert singletons.labels == {n: n for n in range(10)}

    def test_cut_out_of_range(self, two_cliques):
        d = fast_greedy(two_cliques)
        with pytest.raises(MiningError):
            cut_dendrogram(d, 0)
        with pytest.raises(MiningError):
            cut_dendrogram(d, 11)

    @pytest.mark.parametrize("seed", range(5))
    def test_incremental_q_matches_direct_summation(self, seed):
        c = _random_graph(seed)
        d = fast_greedy(c)
        for k in range(1, len(d.leaves) + 1):
            p = cut_dendrogram(d, k)
            assert p.q == pytest.approx(modularity(c, p.labels), abs=1e-9)

    @pytest.mark.parametrize("seed", range(3))
    def test_cuts_are_nested(self, seed):
        d = fast_greedy(_random_graph(seed))
        for k in range(2, len(d.leaves) + 1):
            fine, coarse = cut_dendrogram(d, k), cut_dendrogram(d, k - 1)
            for members in fine.members().values():
                assert len({coarse.labels[n] for n in members}) == 1

    def test_labels_are_contiguous(self):
        d = fast_greedy(_random_graph(7))
        for k in (1, 3, 8):
            labels = cut_dendrogram(d, k).labels
            assert sorted(set(labels.values())) == list(range(k))
            assert labels[min(labels)] == 0

    def test_isolated_nodes_are_merged_last(self):
        c = _undirected({(0, 1): 2, (1, 2): 2, (0, 2): 2}, nodes=(0, 1, 2, 3))
        d = fast_greedy(c)
        assert d.best_k == 2
        assert best_partition(d).labels == {0: 0, 1: 0, 2: 0, 3: 1}
        assert len(d.merges) == 3

    def test_many_isolated_nodes_merge_in_near_linear_time(self):
        n = 3000
        c = _undirected({(0, 1): 2, (1, 2): 2, (0, 2): 2}, nodes=range(n))
        d = fast_greedy(c)
        assert len(d.merges) == n - 1
        assert d.best_k == n - 2
        assert d.merges[-1].right == 3
        assert d.q_at(1) == pytest.approx(0.0, abs=1e-12)
        assert cut_dendrogram(d, 2).labels[n - 1] == 1

    def test_directed_input_is_projected(self):
        c = Chronnet(directed=True, nodes=(0, 1, 2, 3), weights={(0, 1): 3, (1, 0): 2, (2, 3): 4, (1, 2): 1})
        assert fast_greedy(c).best_k == 2

    def test_deterministic(self):
        c = _random_graph(11)
        assert fast_greedy(c) == fast_greedy(c)

    def test_no_links_raises(self):
        with pytest.raises(MiningError):
            fast_greedy(_undirected({(0, 0): 3}, nodes=(0, 1)))


def _is_stable(c, labels):
    """Every node holds one of the labels with the largest neighbor weight."""
    for node, nbrs in neighbors(c).items():
        if not nbrs:
            continue
        votes = {}
        for other, w in nbrs.items():
            votes[labels[other]] = votes.get(labels[other], 0) + w
        if votes.get(labels[node], 0) != max(votes.values()):
            return False
    return True


class TestLabelPropagation:
    """Tests for label_propagation."""

    def test_two_cliques_over_many_seeds(self, two_cliques):
        outcomes = [label_propagation(two_cliques, seed=seed).labels for seed in range(100)]
        single = {n: 0 for n in range(10)}
        assert all(labels in (CLIQUES, single) for labels in outcomes)
        assert sum(labels == CLIQUES for labels in outcomes) >= 50

    def test_complete_graph_gives_one_community(self):
        for seed in range(10):
            assert label_propagation(_clique(6), seed=seed).n_communities == 1

    def test_isolated_nodes_keep_their_label(self):
        c = _undirected({(0, 1): 1, (1, 2): 1, (0, 2): 1}, nodes=(0, 1, 2, 3, 4))
        p = label_propagation(c, seed=1)
        assert p.labels[3] != p.labels[4]
        assert p.labels[3] != p.labels[0]
        assert p.n_communities == 3

    @pytest.mark.parametrize("seed", range(5))
    def test_result_is_stable(self, seed):
        c = _random_graph(seed, n=40, p=0.1)
        p = label_propagation(c, seed=seed)
        assert _is_stable(c, p.labels)
        assert p.q == pytest.approx(modularity(c, p.labels))
        assert p.method == "label-propagation"
        assert p.extra["seed"] == seed

    def test_same_seed_same_partition(self):
        c = _random_graph(4, n=40, p=0.1)
        assert label_propagation(c, seed=3) == label_propagation(c, seed=3)

    def test_no_links_raises(self):
        with pytest.raises(MiningError):
            label_propagation(_undirected({}, nodes=(0, 1)))


class TestPartition:
    """Tests for Partition helpers."""

    def test_members(self):
        p = Partition(labels={0: 0, 1: 1, 2: 0}, q=0.0)
        assert p.members() == {0: [0, 2], 1: [1]}
        assert p.n_communities == 2
