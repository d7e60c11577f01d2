"""Tests for report analyzers and the analyzer registry."""
import pytest

from src.analyzers import (
    AnalysisReport,
    AnalyzerRegistry,
    CentralityAnalyzer,
    DegreeAnalyzer,
    DensityAnalyzer,
    PathAnalyzer,
    ReportAnalyzer,
    TransitivityAnalyzer,
    get_registry,
)
from src.network import Chronnet


class ConstantAnalyzer(ReportAnalyzer):
    """Analyzer stub returning a fixed section."""

    @property
    def name(self) -> str:
        return "constant"

    def analyze(self) -> AnalysisReport:
        return AnalysisReport(section_name=self.name, summary=f"{self.chronnet.n_nodes} nodes")


class FailingAnalyzer(ReportAnalyzer):
    @property
    def name(self) -> str:
        return "failing"

    def analyze(self) -> AnalysisReport:
        raise RuntimeError("boom")


class TestAnalysisReport:
    def test_to_dict(self):
        report = AnalysisReport(section_name="x", rating="r", details=["a"], data={"k": 1})
        assert report.to_dict() == {
            "section_name": "x",
            "rating": "r",
            "summary": "",
            "details": ["a"],
            "data": {"k": 1},
        }


class TestNetworkAnalyzers:
    """Report sections computed on two 5-cliques joined by one bridge."""

    def test_density(self, two_cliques):
        report = DensityAnalyzer(two_cliques).analyze()
        assert report.section_name == "density"
        assert report.rating == "sparse"
        assert report.data["nodes"] == 10
        assert report.data["links"] == 21
        assert report.data["total_weight"] == 21
        assert report.data["self_loop_weight"] == 0
        assert report.data["average_degree"] == pytest.approx(4.2)
        assert report.data["edge_density"] == pytest.approx(21 / 45)
        assert report.data["directed"] is False

    def test_degree_distribution(self, two_cliques):
        report = DegreeAnalyzer(two_cliques).analyze()
        assert report.data["mean"] == pytest.approx(4.2)
        assert report.data["max"] == 5
        assert report.data["min"] == 4
        assert report.data["distribution"] == [{"value": 4, "p": 0.8}, {"value": 5, "p": 0.2}]

    def test_paths(self, two_cliques):
        report = PathAnalyzer(two_cliques).analyze()
        assert report.section_name == "paths"
        assert report.data["component_count"] == 1
        assert report.data["diameter"] == 3
        assert PathAnalyzer(two_cliques, weighted=True).name == "weighted-paths"

    def test_transitivity(self, two_cliques):
        # 20 triangles over 8 * C(4,2) + 2 * C(5,2) = 68 connected triples
        report = TransitivityAnalyzer(two_cliques).analyze()
        assert report.data["transitivity"] == pytest.approx(60 / 68)

    def test_centrality_top_nodes(self, two_cliques):
        report = CentralityAnalyzer(two_cliques).analyze()
        assert report.data["degree"]["top_node"] == 4
        assert report.data["betweenness"]["top_node"] == 4
        assert len(report.data["closeness"]["top"]) == 5
        assert report.summary == "degree hub 4, betweenness bridge 4"


class TestAnalyzerRegistry:
    def test_builtin_names(self):
        registry = AnalyzerRegistry()
        assert registry.list_all() == [
            "density", "degree", "strength", "fits", "paths", "weighted-paths", "transitivity", "centrality",
        ]

    def test_empty_registry(self):
        assert AnalyzerRegistry(auto_register=False).list_all() == []

    def test_register_and_run(self, two_cliques):
        registry = AnalyzerRegistry(auto_register=False)
        registry.register("constant", ConstantAnalyzer, "stub")
        assert registry.get("constant").description == "stub"
        assert registry.run("constant", two_cliques).summary == "10 nodes"

    def test_unknown_analyzer(self, two_cliques):
        with pytest.raises(ValueError, match="not found"):
            AnalyzerRegistry().run("nope", two_cliques)

    def test_run_all_collects_errors(self, two_cliques):
        registry = AnalyzerRegistry(auto_register=False)
        registry.register("failing", FailingAnalyzer)
        registry.register("constant", ConstantAnalyzer)
        results = registry.run_all(two_cliques)
        assert results["failing"] == {"status": "error", "error": "boom"}
        assert results["constant"]["status"] == "success"
        assert results["constant"]["data"]["section_name"] == "constant"

    def test_run_all_stop_on_error(self, two_cliques):
        registry = AnalyzerRegistry(auto_register=False)
        registry.register("failing", FailingAnalyzer)
        registry.register("constant", ConstantAnalyzer)
        results = registry.run_all(two_cliques, stop_on_error=True)
        assert list(results) == ["failing"]

    def test_run_all_selection_and_options(self, two_cliques):
        results = AnalyzerRegistry().run_all(
            two_cliques, ["density", "weighted-paths"], options={"weighted-paths": {"workers": 2}}
        )
        assert list(results) == ["density", "weighted-paths"]
        assert all(r["status"] == "success" for r in results.values())

    def test_measure_error_on_tiny_network(self):
        c = Chronnet(directed=False, nodes=(0, 1), weights={(0, 1): 1})
        results = AnalyzerRegistry().run_all(c, ["transitivity"])
        assert results["transitivity"]["status"] == "error"
        assert "at least 3 nodes" in results["transitivity"]["error"]

    def test_global_registry_singleton(self):
        assert get_registry() is get_registry()
