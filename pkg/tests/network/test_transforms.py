"""Tests for pruning, projection and node removal."""
import numpy as np
import pytest

from src.events import EventSet
from src.grid import GridSpec
from src.network import (
    Chronnet,
    ConstructionError,
    as_undirected,
    build,
    link_fraction,
    neighbors,
    prune,
    prune_quantile,
    remove_isolated,
    remove_nodes,
    total_weight,
    undirect,
)


def _directed(weights, nodes=None):
    nodes = nodes if nodes is not None else {n for key in weights for n in key}
    return Chronnet(directed=True, nodes=tuple(nodes), weights=weights)


@pytest.fixture
def random_chronnet():
    rng = np.random.default_rng(21)
    es = EventSet(np.arange(2000), rng.random(2000) ** 2, rng.random(2000) ** 2)
    return build(es, GridSpec.rect(6, 6, (0, 1, 0, 1)))


class TestPrune:
    """Tests for threshold pruning."""

    def test_drops_light_links(self):
        c = prune(_directed({(0, 1): 1, (1, 2): 2, (2, 0): 5}), 1)
        assert dict(c.weights) == {(1, 2): 2, (2, 0): 5}
        assert c.nodes == (0, 1, 2)
        assert c.meta.tau == 1.0

    def test_zero_threshold_is_identity(self, random_chronnet):
        assert dict(prune(random_chronnet, 0).weights) == dict(random_chronnet.weights)

    def test_self_loops_follow_the_same_rule(self):
        c = prune(_directed({(0, 0): 1, (1, 1): 3}), 2)
        assert dict(c.weights) == {(1, 1): 3}

    def test_monotone(self, random_chronnet):
        loose, strict = prune(random_chronnet, 2), prune(random_chronnet, 6)
        assert set(strict.weights) <= set(loose.weights)

    def test_composition(self, random_chronnet):
        twice = prune(prune(random_chronnet, 3), 1)
        once = prune(random_chronnet, 3)
        assert dict(twice.weights) == dict(once.weights)
        assert twice.meta.tau == 3.0

    def test_negative_threshold_rejected(self):
        with pytest.raises(ConstructionError):
            prune(_directed({(0, 1): 1}), -1)

    def test_link_fraction(self):
        c = _directed({(0, 1): 1, (1, 2): 2, (2, 0): 5, (0, 2): 9})
        assert link_fraction(prune(c, 2), c) == 0.5


class TestPruneQuantile:
    """Tests for keep-top pruning."""

    def test_keeps_heaviest(self):
        c = _directed({(i, i + 1): i + 1 for i in range(10)})
        assert sorted(prune_quantile(c, 0.2).weights.values()) == [9, 10]

    def test_full_fraction_is_identity(self, random_chronnet):
        assert dict(prune_quantile(random_chronnet, 1.0).weights) == dict(random_chronnet.weights)

    def test_ties_at_cutoff_are_kept(self):
        c = _directed({(0, 1): 5, (1, 2): 5, (2, 3): 5, (3, 0): 1})
        kept = prune_quantile(c, 0.25)
        assert sorted(kept.weights.values()) == [5, 5, 5]
        assert kept.meta.keep_fraction == 0.25

    def test_fraction_range(self):
        with pytest.raises(ConstructionError):
            prune_quantile(_directed({(0, 1): 1}), 0)


class TestUndirect:
    """Tests for the undirected projection."""

    def test_reciprocal_links_sum(self):
        c = undirect(_directed({(0, 1): 2, (1, 0): 1}))
        assert c.directed is False
        assert dict(c.weights) == {(0, 1): 3}

    def test_self_loop_copied(self):
        assert dict(undirect(_directed({(0, 0): 4})).weights) == {(0, 0): 4}

    def test_empty_graph(self):
        c = undirect(Chronnet(directed=True, nodes=(), weights={}))
        assert c.nodes == ()
        assert dict(c.weights) == {}

    def test_preserves_total_weight(self, random_chronnet):
        assert total_weight(undirect(random_chronnet)) == total_weight(random_chronnet)
        assert undirect(random_chronnet).nodes == random_chronnet.nodes

    def test_already_undirected_rejected(self, two_cliques):
        with pytest.raises(ConstructionError):
            undirect(two_cliques)
        assert as_undirected(two_cliques) is two_cliques


class TestNodeRemoval:
    """Tests for remove_nodes, remove_isolated and neighbors."""

    def test_remove_nodes_drops_links(self, two_cliques):
        c = remove_nodes(two_cliques, [4])
        assert 4 not in c.nodes
        assert all(4 not in key for key in c.weights)
        assert len(c.weights) == len(two_cliques.weights) - 5

    def test_remove_isolated_ignores_self_loops(self):
        c = _directed({(0, 1): 1, (2, 2): 3}, nodes=(0, 1, 2, 3))
        assert remove_isolated(c).nodes == (0, 1)

    def test_neighbors_sum_reciprocal_weights(self):
        adj = neighbors(_directed({(0, 1): 2, (1, 0): 1, (1, 1): 7}))
        assert adj == {0: {1: 3}, 1: {0: 3}}
