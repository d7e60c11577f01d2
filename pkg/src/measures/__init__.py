"""Network characterization: degrees, distributions, fits, paths, structure, centrality."""
from src.measures.centrality import KINDS as CENTRALITY_KINDS
from src.measures.centrality import centrality, top_node
from src.measures.degree import (
    DirectedDegrees,
    MeasureError,
    average_degree,
    ccdf,
    degree,
    degree_distribution,
    directed_degrees,
    distribution,
    edge_density,
    strength,
    strength_distribution,
)
from src.measures.fitting import (
    FitComparison,
    FitResult,
    ShapeStats,
    compare_fits,
    fit_log_normal,
    fit_power_law,
    gaussian_shape,
    sample_discrete_power_law,
)
from src.measures.paths import PathStats, largest_component, path_stats, simple_graph
from src.measures.structure import articulation_points, transitivity

__all__ = [
    "CENTRALITY_KINDS",
    "DirectedDegrees",
    "FitComparison",
    "FitResult",
    "MeasureError",
    "PathStats",
    "ShapeStats",
    "articulation_points",
    "average_degree",
    "ccdf",
    "centrality",
    "compare_fits",
    "degree",
    "degree_distribution",
    "directed_degrees",
    "distribution",
    "edge_density",
    "fit_log_normal",
    "fit_power_law",
    "gaussian_shape",
    "largest_component",
    "path_stats",
    "sample_discrete_power_law",
    "simple_graph",
    "strength",
    "strength_distribution",
    "top_node",
    "transitivity",
]
