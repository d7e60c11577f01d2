"""Report analyzers over chronnet measures."""
import logging
from typing import Dict, List

from src.analyzers.base import AnalysisReport, ReportAnalyzer
from src.measures import (
    CENTRALITY_KINDS,
    MeasureError,
    average_degree,
    centrality,
    compare_fits,
    degree,
    distribution,
    edge_density,
    gaussian_shape,
    path_stats,
    strength,
    top_node,
    transitivity,
)
from src.network import Chronnet, n_links, total_weight

logger = logging.getLogger(__name__)


class _DistributionAnalyzer(ReportAnalyzer):
    """Distribution table plus shape statistics of a per-node quantity."""

    label = ""

    def values(self) -> Dict[int, int]:
        raise NotImplementedError

    def analyze(self) -> AnalysisReport:
        values = self.values()
        dist = distribution(values.values())
        seq = list(values.values())
        data = {
            "mean": sum(seq) / len(seq),
            "max": max(seq),
            "min": min(seq),
            "distribution": [{"value": k, "p": p} for k, p in dist.items()],
        }
        details = [f"{len(seq)} nodes, mean {self.label} {data['mean']:.3f}, max {data['max']}"]
        rating = "heterogeneous"
        try:
            shape = gaussian_shape(seq)
            data["skewness"] = shape.skewness
            data["excess_kurtosis"] = shape.excess_kurtosis
            details.append(f"skewness {shape.skewness:.3f}, excess kurtosis {shape.excess_kurtosis:.3f}")
            if shape.gaussian:
                rating = "gaussian"
        except MeasureError as e:
            details.append(f"shape statistics unavailable: {e}")
            rating = None
        return AnalysisReport(
            section_name=self.name,
            rating=rating,
            summary=f"{self.label.capitalize()} distribution over {len(dist)} distinct values",
            details=details,
            data=data,
        )


class DegreeAnalyzer(_DistributionAnalyzer):
    label = "degree"

    @property
    def name(self) -> str:
        return "degree"

    def values(self) -> Dict[int, int]:
        return degree(self.chronnet)


class StrengthAnalyzer(_DistributionAnalyzer):
    label = "strength"

    @property
    def name(self) -> str:
        return "strength"

    def values(self) -> Dict[int, int]:
        return strength(self.chronnet)


class FitAnalyzer(ReportAnalyzer):
    """Power-law vs log-normal fits of the degree and strength distributions."""

    @property
    def name(self) -> str:
        return "fits"

    def analyze(self) -> AnalysisReport:
        data: dict = {}
        details: List[str] = []
        preferred = {}
        for quantity, values in (("degree", degree(self.chronnet)), ("strength", strength(self.chronnet))):
            try:
                cmp = compare_fits(list(values.values()), discrete=True)
            except MeasureError as e:
                details.append(f"{quantity}: fit unavailable ({e})")
                continue
            pl = cmp.power_law
            data[quantity] = {
                "power_law": pl.model_dump(),
                "log_normal": cmp.log_normal.model_dump(),
                "preferred": cmp.preferred,
                "reliable": pl.reliable,
            }
            preferred[quantity] = cmp.preferred
            details.append(
                f"{quantity}: gamma={pl.gamma:.3f}+-{pl.gamma_stderr:.3f} (xmin={pl.xmin:g}, tail={pl.n_tail}); "
                f"preferred {cmp.preferred}"
            )
        if not data:
            raise MeasureError("No distribution could be fitted")
        return AnalysisReport(
            section_name=self.name,
            rating=preferred.get("degree") or preferred.get("strength"),
            summary="; ".join(f"{q} looks {fam}" for q, fam in preferred.items()),
            details=details,
            data=data,
        )


class PathAnalyzer(ReportAnalyzer):
    """Average shortest path and diameter, in hops or with 1/w link lengths."""

    def __init__(self, chronnet: Chronnet, weighted: bool = False, workers: int = None):
        super().__init__(chronnet)
        self.weighted = weighted
        self.workers = workers

    @property
    def name(self) -> str:
        return "weighted-paths" if self.weighted else "paths"

    def analyze(self) -> AnalysisReport:
        stats = path_stats(self.chronnet, weighted=self.weighted, workers=self.workers)
        details = [
            f"{stats.component_count} component(s), largest holds {stats.largest_component_fraction:.1%} of nodes",
        ]
        if stats.component_count > 1:
            details.append("averages taken over reachable pairs only")
        return AnalysisReport(
            section_name=self.name,
            summary=f"<l>={stats.avg_path_length:.4f}, diameter={stats.diameter:g}",
            details=details,
            data={
                "avg_path_length": stats.avg_path_length,
                "diameter": stats.diameter,
                "component_count": stats.component_count,
                "largest_component_fraction": stats.largest_component_fraction,
                "reachable_pairs": stats.reachable_pairs,
            },
        )


class TransitivityAnalyzer(ReportAnalyzer):
    @property
    def name(self) -> str:
        return "transitivity"

    def analyze(self) -> AnalysisReport:
        value = transitivity(self.chronnet)
        return AnalysisReport(
            section_name=self.name,
            summary=f"transitivity={value:.4f}",
            data={"transitivity": value},
        )


class DensityAnalyzer(ReportAnalyzer):
    """Size, density and average degree."""

    @property
    def name(self) -> str:
        return "density"

    def analyze(self) -> AnalysisReport:
        c = self.chronnet
        density = edge_density(c)
        k_mean = average_degree(c)
        self_loops = sum(w for (a, b), w in c.weights.items() if a == b)
        return AnalysisReport(
            section_name=self.name,
            rating="dense" if density > 0.5 else "sparse",
            summary=f"{c.n_nodes} nodes, {n_links(c)} links, density {density:.4f}",
            details=[f"average degree {k_mean:.3f}", f"self-loop weight {self_loops}"],
            data={
                "nodes": c.n_nodes,
                "links": n_links(c),
                "total_weight": total_weight(c),
                "self_loop_weight": self_loops,
                "edge_density": density,
                "average_degree": k_mean,
                "directed": c.directed,
            },
        )


class CentralityAnalyzer(ReportAnalyzer):
    """Top nodes per centrality kind."""

    top = 5

    @property
    def name(self) -> str:
        return "centrality"

    def analyze(self) -> AnalysisReport:
        data = {}
        details = []
        for kind in CENTRALITY_KINDS:
            scores = centrality(self.chronnet, kind)
            ranked = sorted(scores, key=lambda n: (-scores[n], n))[: self.top]
            data[kind] = {"top_node": top_node(scores), "top": [{"node": n, "score": scores[n]} for n in ranked]}
            details.append(f"{kind}: top node {data[kind]['top_node']} ({scores[data[kind]['top_node']]:.4g})")
        return AnalysisReport(
            section_name=self.name,
            summary=f"degree hub {data['degree']['top_node']}, betweenness bridge {data['betweenness']['top_node']}",
            details=details,
            data=data,
        )
