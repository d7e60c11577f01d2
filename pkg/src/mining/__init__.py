"""Spatiotemporal mining on chronnets: communities, event clustering, change points, outliers."""
from src.mining.communities import (
    Dendrogram,
    Merge,
    MiningError,
    Partition,
    best_partition,
    cut_dendrogram,
    fast_greedy,
    label_propagation,
    modularity,
)
from src.mining.outliers import OutlierSelection, outlier_nodes
from src.mining.series import (
    NOISE,
    CommunitySeries,
    adjusted_rand_index,
    change_point_hits,
    change_points,
    cluster_events,
    correct_series,
    ground_truth_boundaries,
)

__all__ = [
    "NOISE",
    "CommunitySeries",
    "Dendrogram",
    "Merge",
    "MiningError",
    "OutlierSelection",
    "Partition",
    "adjusted_rand_index",
    "best_partition",
    "change_point_hits",
    "change_points",
    "cluster_events",
    "correct_series",
    "cut_dendrogram",
    "fast_greedy",
    "ground_truth_boundaries",
    "label_propagation",
    "modularity",
    "outlier_nodes",
]
