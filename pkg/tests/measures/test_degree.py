"""Tests for degrees, strengths and distributions."""
import pytest

from src.measures import (
    MeasureError,
    average_degree,
    ccdf,
    degree,
    degree_distribution,
    directed_degrees,
    distribution,
    edge_density,
    strength,
)
from src.network import Chronnet


def _undirected(weights, nodes=None):
    nodes = nodes if nodes is not None else {n for key in weights for n in key}
    return Chronnet(directed=False, nodes=tuple(nodes), weights=weights)


TRIANGLE = {(0, 1): 1, (1, 2): 1, (0, 2): 1}
STAR = {(0, 1): 1, (0, 2): 1, (0, 3): 1, (0, 4): 1}
K4 = {(a, b): 1 for a in range(4) for b in range(4) if a < b}


class TestDegreeAndStrength:
    """Tests for degree and strength vectors."""

    def test_triangle(self):
        c = _undirected(TRIANGLE)
        assert degree(c) == {0: 2, 1: 2, 2: 2}
        assert strength(c) == {0: 2, 1: 2, 2: 2}

    def test_star_center(self):
        assert degree(_undirected(STAR))[0] == 4

    def test_self_loop_policy(self):
        c = _undirected({(0, 1): 3, (0, 2): 5, (0, 0): 2})
        assert degree(c)[0] == 2
        assert strength(c)[0] == 10

    def test_directed_input_uses_projection(self):
        c = Chronnet(directed=True, nodes=(0, 1), weights={(0, 1): 2, (1, 0): 3})
        assert degree(c) == {0: 1, 1: 1}
        assert strength(c) == {0: 5, 1: 5}

    def test_handshake_sums(self, two_cliques):
        assert sum(degree(two_cliques).values()) == 2 * len(two_cliques.weights)
        c = _undirected({(0, 1): 3, (1, 2): 2, (2, 2): 4})
        assert sum(strength(c).values()) == 2 * (3 + 2) + 4

    def test_isolated_node_has_zero_degree(self):
        c = _undirected({(0, 1): 1}, nodes=(0, 1, 2))
        assert degree(c)[2] == 0

    def test_directed_degrees(self):
        c = Chronnet(directed=True, nodes=(0, 1, 2), weights={(0, 1): 2, (0, 2): 1, (1, 1): 4})
        dd = directed_degrees(c)
        assert dd.out_degree == {0: 2, 1: 0, 2: 0}
        assert dd.in_degree == {0: 0, 1: 1, 2: 1}
        assert dd.in_strength == {0: 0, 1: 6, 2: 1}
        assert dd.out_strength == {0: 3, 1: 4, 2: 0}

    def test_directed_degrees_need_directed_input(self, two_cliques):
        with pytest.raises(MeasureError):
            directed_degrees(two_cliques)


class TestDistributions:
    """Tests for P(k), CCDF and summary ratios."""

    def test_single_value(self):
        assert degree_distribution({0: 2, 1: 2, 2: 2}) == {2: 1.0}

    def test_fractions(self):
        dist = distribution([1, 1, 2])
        assert dist == {1: pytest.approx(2 / 3), 2: pytest.approx(1 / 3)}
        assert sum(dist.values()) == pytest.approx(1.0)

    def test_empty_graph_raises(self):
        with pytest.raises(MeasureError):
            degree_distribution({})

    def test_ccdf(self):
        frame = ccdf([3, 1, 2, 1])
        assert frame["value"].tolist() == [1.0, 2.0, 3.0]
        assert frame["ccdf"].tolist() == [1.0, 0.5, 0.25]

    def test_average_degree(self, two_cliques):
        assert average_degree(two_cliques) == pytest.approx(4.2)

    def test_edge_density(self, two_cliques):
        assert edge_density(_undirected(K4)) == 1.0
        assert edge_density(_undirected({}, nodes=(0, 1, 2))) == 0.0
        assert edge_density(two_cliques) == pytest.approx(21 / 45)

    def test_edge_density_needs_two_nodes(self):
        with pytest.raises(MeasureError):
            edge_density(_undirected({}, nodes=(0,)))
