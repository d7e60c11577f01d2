"""Chronnet construction, pruning, projection, snapshots and persistence."""
from src.network.chronnet import (
    Chronnet,
    ChronnetMeta,
    ConstructionError,
    from_links,
    link_fraction,
    n_links,
    neighbors,
    to_networkx,
    total_weight,
)
from src.network.construction import (
    Snapshot,
    SnapshotSequence,
    build,
    build_parallel,
    build_snapshots,
)
from src.network.io import NetworkFormatError, read_network, write_network
from src.network.transforms import (
    as_undirected,
    prune,
    prune_quantile,
    remove_isolated,
    remove_nodes,
    undirect,
)

__all__ = [
    "Chronnet",
    "ChronnetMeta",
    "ConstructionError",
    "NetworkFormatError",
    "Snapshot",
    "SnapshotSequence",
    "as_undirected",
    "build",
    "build_parallel",
    "build_snapshots",
    "from_links",
    "link_fraction",
    "n_links",
    "neighbors",
    "prune",
    "prune_quantile",
    "read_network",
    "remove_isolated",
    "remove_nodes",
    "to_networkx",
    "total_weight",
    "undirect",
    "write_network",
]
