"""Tests for the canned experiment reproductions."""
import json

import pytest

from src.services import FIGURES, PipelineError, ReproRunner, repro
from src.services.repro import Check, FigureSummary


def _summary(out):
    return json.loads((out / "summary.json").read_text(encoding="utf-8"))


class TestFigureSummary:
    def test_status(self):
        summary = FigureSummary("figX", [1])
        assert summary.status == "PASS"
        summary.checks.append(Check("a", True))
        summary.checks.append(Check("b", False, 0.4, "> 0.5"))
        assert summary.status == "FAIL"
        assert summary.to_dict()["checks"][1] == {"name": "b", "passed": False, "value": 0.4, "threshold": "> 0.5"}


class TestReproRunner:
    def test_default_seeds(self, tmp_path):
        runner = ReproRunner(output_dir=tmp_path)
        assert runner.seeds == list(range(1, 11))

    def test_threshold_scales_with_seeds(self, tmp_path):
        runner = ReproRunner(output_dir=tmp_path, seeds=range(1, 11))
        assert runner._enough(8, 0.8)
        assert not runner._enough(7, 0.8)
        assert ReproRunner(output_dir=tmp_path, seeds=[1, 2])._enough(2, 0.9)
        assert not ReproRunner(output_dir=tmp_path, seeds=[1, 2])._enough(1, 0.9)

    def test_unknown_figure(self, tmp_path):
        with pytest.raises(PipelineError, match="Unknown figure"):
            repro("fig9", output_dir=tmp_path)

    def test_lorenz_top_closeness_node_splits_the_lobes(self, tmp_path):
        row = ReproRunner(output_dir=tmp_path, seeds=[1])._lorenz_check(1)
        assert row["articulation"]
        assert row["splits_lobes"]

    def test_figure_ids(self):
        assert FIGURES == ("fig1", "fig2", "fig3", "fig4", "fig5")


@pytest.mark.acceptance
class TestReproAcceptance:
    """Figure reproductions over their full seed lists."""

    def test_distribution_shapes(self, tmp_path):
        out = repro("fig1", output_dir=tmp_path)
        summary = _summary(out)
        assert summary["status"] == "PASS"
        assert summary["seeds"] == [1, 2, 3, 4, 5]
        assert (out / "power-law_degree.csv").exists()

    def test_pruning_sweep(self, tmp_path):
        out = repro("fig2", output_dir=tmp_path)
        summary = _summary(out)
        assert summary["status"] == "PASS"
        assert len(summary["data"]["seeds"]) == 10
        assert (out / "degree_tau9.csv").exists()

    def test_centrality_structure(self, tmp_path):
        out = repro("fig3", output_dir=tmp_path)
        summary = _summary(out)
        assert summary["status"] == "PASS"
        lorenz = {c["name"]: c for c in summary["checks"]}["lorenz_articulation"]
        assert lorenz["value"] >= 8
        assert summary["data"]["rossler"]["nodes"] > 100
        assert (out / "two_cluster_betweenness.csv").exists()

    def test_four_period_clustering(self, tmp_path):
        out = repro("fig4", output_dir=tmp_path)
        summary = _summary(out)
        assert summary["status"] == "PASS"
        assert all(row["best_k"] == 4 for row in summary["data"]["seeds"])
        assert (out / "dendrogram.csv").exists()
        assert (out / "series.csv").exists()

    def test_three_region_change_points(self, tmp_path):
        out = repro("fig5", output_dir=tmp_path)
        summary = _summary(out)
        assert summary["status"] == "PASS"
        assert all(row["boundaries"] == 11 for row in summary["data"]["seeds"])
        changes = json.loads((out / "changes.json").read_text(encoding="utf-8"))
        assert len(changes["boundaries"]) == 11
