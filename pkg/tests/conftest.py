"""Shared fixtures."""
import pytest

from src.config import get_settings
from src.grid import GridSpec
from src.network import Chronnet


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    """Each test sees settings built from its own environment."""
    for name in ("CHRONNET_THREADS", "CHRONNET_MIN_CONFIDENCE", "CHRONNET_DEFAULT_SEED"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def _clique_weights(members, weight=1):
    weights = {}
    for a in members:
        for b in members:
            if a < b:
                weights[(a, b)] = weight
    return weights


@pytest.fixture
def two_cliques() -> Chronnet:
    """Two 5-cliques (0-4 and 5-9) joined by the single link 4-5."""
    weights = _clique_weights(range(5))
    weights.update(_clique_weights(range(5, 10)))
    weights[(4, 5)] = 1
    return Chronnet(directed=False, nodes=tuple(range(10)), weights=weights)


@pytest.fixture
def small_grid() -> GridSpec:
    """2x2 rect grid over the unit square."""
    return GridSpec.rect(2, 2, (0.0, 1.0, 0.0, 1.0))
