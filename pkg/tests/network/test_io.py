"""Tests for edge-list persistence."""
import json
import math

import numpy as np
import pytest

from src.events import EventSet
from src.grid import GridSpec
from src.network import (
    Chronnet,
    NetworkFormatError,
    build,
    prune,
    read_network,
    undirect,
    write_network,
)


@pytest.fixture
def built():
    rng = np.random.default_rng(2)
    es = EventSet(np.arange(300), rng.random(300), rng.random(300))
    return build(es, GridSpec.hex(0.2, (0, 1, 0, 1)), h=2, d_max=0.5, include_all_cells=True)


class TestRoundTrip:
    """Tests for write_network followed by read_network."""

    def test_built_chronnet(self, tmp_path, built):
        path = write_network(built, tmp_path / "net.csv")
        assert (tmp_path / "net.meta.json").is_file()
        assert read_network(path) == built

    def test_pruned_undirected_chronnet(self, tmp_path, built):
        c = prune(undirect(built), 1)
        assert read_network(write_network(c, tmp_path / "net.csv")) == c

    def test_infinite_cap_is_null_in_meta(self, tmp_path):
        c = Chronnet(directed=True, nodes=(0, 1), weights={(0, 1): 3})
        write_network(c, tmp_path / "net.csv")
        meta = json.loads((tmp_path / "net.meta.json").read_text())
        assert meta["d_max"] is None
        assert math.isinf(read_network(tmp_path / "net.csv").meta.d_max)

    def test_empty_chronnet_has_header_only(self, tmp_path):
        c = Chronnet(directed=True, nodes=(), weights={})
        path = write_network(c, tmp_path / "net.csv")
        assert path.read_text().strip() == "src,dst,weight"
        assert read_network(path) == c

    def test_explicit_meta_path(self, tmp_path, built):
        write_network(built, tmp_path / "a.csv", meta_path=tmp_path / "meta" / "a.json")
        assert read_network(tmp_path / "a.csv", meta_path=tmp_path / "meta" / "a.json") == built


class TestReadErrors:
    """Tests for malformed network files."""

    def _write(self, tmp_path, text):
        path = tmp_path / "net.csv"
        path.write_text(text)
        return path

    def test_negative_weight(self, tmp_path):
        path = self._write(tmp_path, "src,dst,weight\n0,1,2\n1,0,-3\n")
        with pytest.raises(NetworkFormatError, match="line 3"):
            read_network(path)

    def test_non_integer_id(self, tmp_path):
        path = self._write(tmp_path, "src,dst,weight\nA,1,2\n")
        with pytest.raises(NetworkFormatError, match="line 2"):
            read_network(path)

    def test_duplicate_link(self, tmp_path):
        path = self._write(tmp_path, "src,dst,weight\n0,1,2\n0,1,1\n")
        with pytest.raises(NetworkFormatError, match="duplicate"):
            read_network(path)

    def test_bad_header(self, tmp_path):
        with pytest.raises(NetworkFormatError, match="header"):
            read_network(self._write(tmp_path, "from,to,w\n0,1,1\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(NetworkFormatError, match="not found"):
            read_network(tmp_path / "absent.csv")

    def test_missing_meta_reads_directed(self, tmp_path):
        c = read_network(self._write(tmp_path, "src,dst,weight\n0,1,2\n1,0,1\n"))
        assert c.directed is True
        assert c.nodes == (0, 1)
        assert dict(c.weights) == {(0, 1): 2, (1, 0): 1}
