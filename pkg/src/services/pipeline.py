"""Run pipeline: events -> chronnet -> pruning -> outliers -> measures -> communities.

Every run is a pure function of its RunConfig and input files. Artifacts go
to one directory together with report.json and a MANIFEST.json recording the
status of each stage.
"""
import logging
import math
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.analyzers import AnalyzerRegistry, get_registry
from src.config import get_settings
from src.events import EventSet, FilterSpec, load_events, sort_events, write_events
from src.generators import OdeSpec, generate_events, make_scenario, sample_trajectory
from src.grid import GridSpec, centers_frame
from src.measures import (
    MeasureError,
    ccdf,
    centrality,
    degree,
    degree_distribution,
    directed_degrees,
    fit_power_law,
    strength,
    strength_distribution,
)
from src.mining import (
    adjusted_rand_index,
    change_points,
    cluster_events,
    correct_series,
    cut_dendrogram,
    fast_greedy,
    label_propagation,
    outlier_nodes,
)
from src.network import (
    Chronnet,
    build,
    build_parallel,
    link_fraction,
    n_links,
    prune,
    prune_quantile,
    remove_isolated,
    remove_nodes,
    total_weight,
    write_network,
)
from src.output import (
    dendrogram_frame,
    distribution_frame,
    node_frame,
    partition_frame,
    series_frame,
    write_frame,
    write_json,
)

logger = logging.getLogger(__name__)


class PipelineError(ValueError):
    """Raised when a pipeline stage fails; partial artifacts stay on disk."""


class SourceConfig(BaseModel):
    """Where events come from: a catalog scenario, an ODE trajectory or a file."""
    model_config = ConfigDict(extra="forbid")

    scenario: Optional[str] = None
    params: Dict[str, Any] = Field(default_factory=dict)
    ode: Optional[OdeSpec] = None
    input: Optional[Path] = None
    format: str = "generic-csv"
    filter: Optional[FilterSpec] = None

    @model_validator(mode="after")
    def _one_source(self) -> "SourceConfig":
        given = [name for name in ("scenario", "ode", "input") if getattr(self, name) is not None]
        if len(given) != 1:
            raise ValueError(f"source needs exactly one of scenario, ode or input; got {given or 'none'}")
        return self


class GridConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["rect", "hex"] = "rect"
    nx: Optional[int] = None
    ny: Optional[int] = None
    r: Optional[float] = None
    bbox: Optional[Tuple[float, float, float, float]] = None

    def resolve(self, es: EventSet) -> GridSpec:
        """GridSpec over the configured bbox, or over the data extent when none is given."""
        if self.bbox is not None:
            return GridSpec(kind=self.kind, bbox=self.bbox, nx=self.nx, ny=self.ny, r=self.r)
        return GridSpec.fit(es.x, es.y, kind=self.kind, nx=self.nx, ny=self.ny, r=self.r)


class PruneConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tau: Optional[float] = Field(default=None, ge=0)
    keep_top: Optional[float] = Field(default=None, gt=0, le=1)
    # Extra thresholds reported as degree-distribution tables.
    sweep: List[float] = Field(default_factory=list)
    remove_isolated: bool = False

    @model_validator(mode="after")
    def _exclusive(self) -> "PruneConfig":
        if self.tau is not None and self.keep_top is not None:
            raise ValueError("prune takes tau or keep_top, not both")
        if any(not (t >= 0) for t in self.sweep):
            raise ValueError("sweep thresholds must be >= 0")
        return self


class OutlierConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    metric: Literal["degree", "strength"] = "degree"
    top_fraction: float = Field(default=0.02, gt=0, lt=1)
    remove: bool = False


class CommunityConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    method: Literal["fastgreedy", "labelprop"] = "fastgreedy"
    k: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    delta: Optional[int] = 3

    @field_validator("delta")
    @classmethod
    def _odd(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and (v < 1 or v % 2 == 0):
            raise ValueError(f"delta must be an odd positive integer, got {v}")
        return v


class RunConfig(BaseModel):
    """Complete description of one experiment run."""
    model_config = ConfigDict(extra="forbid")

    name: str = "run"
    seed: int = 42
    source: SourceConfig
    grid: Optional[GridConfig] = None
    h: int = Field(default=1, ge=1)
    d_max: Optional[float] = Field(default=None, ge=0)
    chunks: int = Field(default=1, ge=1)
    include_all_cells: bool = False
    prune: Optional[PruneConfig] = None
    outliers: Optional[OutlierConfig] = None
    measures: List[str] = Field(default_factory=lambda: AnalyzerRegistry().list_all())
    community: Optional[CommunityConfig] = None
    output_dir: Optional[Path] = None

    @field_validator("measures")
    @classmethod
    def _known_measures(cls, v: List[str]) -> List[str]:
        available = AnalyzerRegistry().list_all()
        unknown = [m for m in v if m not in available]
        if unknown:
            raise ValueError(f"unknown measure(s) {unknown}; available: {available}")
        return v

    @model_validator(mode="after")
    def _grid_needed(self) -> "RunConfig":
        if self.source.scenario is None and self.grid is None:
            raise ValueError("a grid section is required unless the source is a catalog scenario")
        return self

    @property
    def max_distance(self) -> float:
        return math.inf if self.d_max is None else self.d_max


class PipelineRunner:
    """Executes a RunConfig stage by stage.

    Example:
        >>> runner = PipelineRunner(RunConfig.model_validate_json(text))
        >>> out_dir = runner.run()
    """

    def __init__(
        self,
        config: RunConfig,
        output_dir: Optional[Path] = None,
        threads: Optional[int] = None,
        registry: Optional[AnalyzerRegistry] = None,
    ):
        self.config = config
        self.output_dir = Path(output_dir or config.output_dir or get_settings().output_dir / config.name)
        self.threads = threads or get_settings().threads
        self.registry = registry or get_registry()
        self.report: Dict[str, Any] = {"name": config.name}
        self.artifacts: List[str] = []
        self.events: Optional[EventSet] = None
        self.grid: Optional[GridSpec] = None
        self.full: Optional[Chronnet] = None
        self.net: Optional[Chronnet] = None

    # ------------------------------------------------------------------
    # Public interface
    # ------------------------------------------------------------------

    def stages(self) -> List[Tuple[str, Callable[[], None], bool]]:
        """(name, callable, enabled) in execution order."""
        c = self.config
        return [
            ("events", self._stage_events, True),
            ("build", self._stage_build, True),
            ("prune", self._stage_prune, c.prune is not None),
            ("outliers", self._stage_outliers, c.outliers is not None),
            ("measure", self._stage_measure, bool(c.measures)),
            ("mine", self._stage_mine, c.community is not None),
        ]

    def run(self) -> Path:
        """Run every enabled stage and return the artifact directory.

        Raises:
            PipelineError: A stage failed; MANIFEST.json names it.
        """
        self.output_dir.mkdir(parents=True, exist_ok=True)
        logger.info("Running %s into %s", self.config.name, self.output_dir)
        manifest: List[Dict[str, Any]] = []
        failure: Optional[Tuple[str, Exception]] = None

        for name, stage, enabled in self.stages():
            if failure is not None or not enabled:
                reason = "earlier stage failed" if failure is not None else "not configured"
                manifest.append({"stage": name, "status": "skipped", "reason": reason})
                continue
            try:
                stage()
                manifest.append({"stage": name, "status": "ok"})
                logger.info("Stage %s ok", name)
            except Exception as e:
                failure = (name, e)
                manifest.append({"stage": name, "status": "failed", "error": str(e)})
                logger.error(f"Stage '{name}' failed: {e}")

        self._save("report.json", self.report)
        write_json(
            {
                "name": self.config.name,
                "config": self.config.model_dump(mode="json"),
                "stages": manifest,
                "artifacts": sorted(self.artifacts),
            },
            self.output_dir / "MANIFEST.json",
        )
        if failure is not None:
            name, error = failure
            raise PipelineError(f"Stage '{name}' failed: {error}") from error
        return self.output_dir

    # ------------------------------------------------------------------
    # Stages
    # ------------------------------------------------------------------

    def _stage_events(self) -> None:
        src = self.config.source
        if src.scenario is not None:
            spec = make_scenario(src.scenario, **{"seed": self.config.seed, **src.params})
            es = generate_events(spec)
            grid = spec.grid
        elif src.ode is not None:
            es = sample_trajectory(src.ode)
            grid = None
        else:
            es = sort_events(load_events(src.input, format=src.format, filters=src.filter))
            grid = None
        if self.config.grid is not None:
            grid = self.config.grid.resolve(es)
        self.events, self.grid = es, grid
        write_events(es, self._path("events.csv"))
        write_frame(centers_frame(grid), self._path("cells.csv"))
        self.report["events"] = {"count": len(es), "tick_data": es.is_tick_data, "grid": grid.describe()}

    def _stage_build(self) -> None:
        c = self.config
        if c.chunks > 1:
            full = build_parallel(self.events, self.grid, c.h, c.max_distance, chunks=c.chunks,
                                  workers=self.threads, include_all_cells=c.include_all_cells)
        else:
            full = build(self.events, self.grid, c.h, c.max_distance, include_all_cells=c.include_all_cells)
        self.full = self.net = full
        self._write_net(full, "net_full.csv" if c.prune is not None else "net.csv")
        self.report["network"] = self._network_summary(full)

    def _stage_prune(self) -> None:
        p = self.config.prune
        sweep = []
        for tau in p.sweep:
            pruned = prune(self.full, tau)
            k = {n: v for n, v in degree(pruned).items() if v > 0}
            row: Dict[str, Any] = {"tau": tau, "retained_link_fraction": link_fraction(pruned, self.full),
                                   "links": n_links(pruned), "nodes_with_links": len(k)}
            if k:
                write_frame(distribution_frame(degree_distribution(k), "degree"),
                            self._path(f"degree_distribution_tau{tau:g}.csv"))
                try:
                    fit = fit_power_law(list(k.values()), discrete=True)
                    row["gamma"], row["xmin"], row["n_tail"] = fit.gamma, fit.xmin, fit.n_tail
                except MeasureError as e:
                    row["fit_error"] = str(e)
            sweep.append(row)

        net = self.full
        if p.tau is not None:
            net = prune(net, p.tau)
        elif p.keep_top is not None:
            net = prune_quantile(net, p.keep_top)
        if p.remove_isolated:
            net = remove_isolated(net)
        self.net = net
        self._write_net(net, "net.csv")
        self.report["prune"] = {
            "tau": p.tau,
            "keep_top": p.keep_top,
            "retained_link_fraction": link_fraction(net, self.full),
            "network": self._network_summary(net),
            "sweep": sweep,
        }

    def _stage_outliers(self) -> None:
        o = self.config.outliers
        selection = outlier_nodes(self.net, o.metric, o.top_fraction)
        values = degree(self.net) if o.metric == "degree" else strength(self.net)
        write_frame(node_frame({o.metric: {n: values[n] for n in selection.nodes}}), self._path("outliers.csv"))
        if o.remove:
            self.net = remove_nodes(self.net, selection.nodes)
        self.report["outliers"] = {
            "metric": o.metric,
            "top_fraction": o.top_fraction,
            "cutoff": selection.cutoff,
            "nodes": list(selection.nodes),
            "degenerate": selection.degenerate,
            "removed": o.remove,
        }

    def _stage_measure(self) -> None:
        net = self.net
        options = {"paths": {"workers": self.threads}, "weighted-paths": {"workers": self.threads}}
        self.report["measures"] = self.registry.run_all(net, self.config.measures, options=options)

        k, s = degree(net), strength(net)
        columns: Dict[str, Dict[int, float]] = {"degree": k, "strength": s}
        if net.directed:
            dd = directed_degrees(net)
            columns.update({"in_degree": dd.in_degree, "out_degree": dd.out_degree,
                            "in_strength": dd.in_strength, "out_strength": dd.out_strength})
        if "centrality" in self.config.measures:
            for kind in ("betweenness", "closeness", "weighted-closeness"):
                columns[kind] = centrality(net, kind)
        write_frame(node_frame(columns), self._path("nodes.csv"))
        if k:
            write_frame(distribution_frame(degree_distribution(k), "degree"), self._path("degree_distribution.csv"))
            write_frame(distribution_frame(strength_distribution(s), "strength"), self._path("strength_distribution.csv"))
            write_frame(ccdf(k.values()), self._path("degree_ccdf.csv"))
            write_frame(ccdf(s.values()), self._path("strength_ccdf.csv"))

    def _stage_mine(self) -> None:
        cc = self.config.community
        section: Dict[str, Any] = {"method": cc.method}
        if cc.method == "fastgreedy":
            dendrogram = fast_greedy(self.net)
            partition = cut_dendrogram(dendrogram, cc.k or dendrogram.best_k)
            write_frame(dendrogram_frame(dendrogram), self._path("dendrogram.csv"))
            section.update({"best_k": dendrogram.best_k, "best_q": dendrogram.best_q})
        else:
            partition = label_propagation(self.net, seed=cc.seed if cc.seed is not None else self.config.seed)
            section["rounds"] = partition.extra.get("rounds")
        write_frame(partition_frame(partition.labels), self._path("partition.csv"))
        section.update({"k": partition.n_communities, "q": partition.q})

        raw = cluster_events(self.events, self.grid, partition)
        series = correct_series(raw, cc.delta) if cc.delta is not None and len(raw) > 2 * cc.delta else raw
        extra = {"t": self.events.t.tolist(), "raw_community": raw.labels.tolist()}
        if "period" in self.events.attr_names:
            truth = list(self.events.attr("period"))
            extra["period"] = truth
            section["ari"] = adjusted_rand_index(truth, series.labels.tolist())
        write_frame(series_frame(series.labels.tolist(), **extra), self._path("series.csv"))
        changes = change_points(series)
        self._save("changes.json", {"delta": cc.delta, "change_points": changes})
        section.update({"noise_events": raw.noise_count, "change_points": len(changes), "delta": cc.delta})
        self.report["communities"] = section

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    def _path(self, name: str) -> Path:
        self.artifacts.append(name)
        return self.output_dir / name

    def _save(self, name: str, data: Any) -> Path:
        return write_json(data, self._path(name))

    def _write_net(self, c: Chronnet, name: str) -> None:
        meta_name = "meta.json" if name == "net.csv" else Path(name).stem + ".meta.json"
        write_network(c, self._path(name), self._path(meta_name))

    @staticmethod
    def _network_summary(c: Chronnet) -> Dict[str, Any]:
        return {"nodes": c.n_nodes, "links": n_links(c), "total_weight": total_weight(c), "directed": c.directed}


def run(config: RunConfig, output_dir: Optional[Path] = None, threads: Optional[int] = None) -> Path:
    """Convenience wrapper around PipelineRunner."""
    return PipelineRunner(config, output_dir=output_dir, threads=threads).run()
