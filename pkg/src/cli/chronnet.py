#!/usr/bin/env python
"""Chronnet command-line interface.

Usage:
    chronnet generate --scenario four-period --seed 7 --out events.csv
    chronnet build --events events.csv --grid rect:30x30 --bbox 0,30,0,30 --out net.csv
    chronnet prune --input net.csv --tau 2 --out pruned.csv
    chronnet measure --input pruned.csv --metrics degree,strength,paths --out report.json
    chronnet communities --input net.csv --method fastgreedy --out part.csv
    chronnet cluster --events events.csv --partition part.csv --network net.csv --out series.csv
    chronnet changes --series series.csv --out changes.json
    chronnet run --config run.json
    chronnet repro fig4
"""
import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import ValidationError

from src.analyzers import get_registry as get_analyzer_registry
from src.config import get_settings
from src.events import EventSet, FilterSpec, load_events, sort_events, write_events
from src.events import get_registry as get_loader_registry
from src.generators import OdeSpec, generate_events, make_scenario, sample_trajectory, scenario_names
from src.grid import GridSpec, centers_frame
from src.measures import (
    compare_fits,
    degree,
    fit_log_normal,
    fit_power_law,
    sample_discrete_power_law,
    strength,
)
from src.mining import (
    CommunitySeries,
    Partition,
    change_points,
    cluster_events,
    correct_series,
    cut_dendrogram,
    fast_greedy,
    label_propagation,
    outlier_nodes,
)
from src.network import (
    build,
    build_parallel,
    build_snapshots,
    n_links,
    prune,
    prune_quantile,
    read_network,
    remove_isolated,
    remove_nodes,
    write_network,
)
from src.output import (
    dendrogram_frame,
    node_frame,
    partition_frame,
    read_json,
    read_partition,
    series_frame,
    write_frame,
    write_json,
)
from src.services import FIGURES, PipelineRunner, ReproRunner, RunConfig

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2


# ----------------------------------------------------------------------
# Argument helpers
# ----------------------------------------------------------------------

def parse_params(items: Optional[List[str]]) -> Dict[str, object]:
    """Parse repeated k=v pairs; values are JSON when they parse as JSON, else strings."""
    params: Dict[str, object] = {}
    for item in items or []:
        if "=" not in item:
            raise ValueError(f"--param expects key=value, got '{item}'")
        key, raw = item.split("=", 1)
        try:
            params[key.strip()] = json.loads(raw)
        except json.JSONDecodeError:
            params[key.strip()] = raw
    return params


def parse_bbox(text: Optional[str]) -> Optional[Tuple[float, float, float, float]]:
    if text is None:
        return None
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 4:
        raise ValueError(f"--bbox expects xmin,xmax,ymin,ymax, got '{text}'")
    return tuple(float(p) for p in parts)


def parse_grid(text: str, bbox: Optional[Tuple[float, float, float, float]], xs=None, ys=None) -> GridSpec:
    """Grid from 'rect:NXxNY' or 'hex:R'; without a bbox the data extent is used."""
    kind, _, size = text.partition(":")
    if kind == "rect":
        try:
            nx, ny = (int(v) for v in size.lower().split("x"))
        except ValueError:
            raise ValueError(f"--grid rect expects rect:NXxNY, got '{text}'") from None
        fields = {"kind": "rect", "nx": nx, "ny": ny}
    elif kind == "hex":
        try:
            fields = {"kind": "hex", "r": float(size)}
        except ValueError:
            raise ValueError(f"--grid hex expects hex:R, got '{text}'") from None
    else:
        raise ValueError(f"--grid must start with rect: or hex:, got '{text}'")
    if bbox is not None:
        return GridSpec(bbox=bbox, **fields)
    if xs is None:
        raise ValueError("--bbox is required when no events are available to fit the grid")
    return GridSpec.fit(xs, ys, **fields)


def _load(args) -> EventSet:
    """Events from --events, in time order."""
    filters = FilterSpec(min_confidence=args.min_confidence, granularity=args.granularity)
    return sort_events(load_events(args.events, format=args.format, filters=filters))


def _print_json(data) -> None:
    print(json.dumps(data, indent=2, sort_keys=True, default=str))


def _add_event_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--events", required=True, type=Path, help="Events file")
    p.add_argument("--format", default="generic-csv", choices=get_loader_registry().list_all(),
                   help="Event file format")
    p.add_argument("--min-confidence", type=float, default=None,
                   help="MCD14ML confidence threshold (rows kept when strictly greater)")
    p.add_argument("--granularity", choices=["day", "minute"], default="day", help="MCD14ML tick granularity")


def _add_grid_options(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--grid", required=required, help="rect:NXxNY or hex:R")
    p.add_argument("--bbox", help="xmin,xmax,ymin,ymax (default: data extent)")


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

def cmd_generate(args) -> int:
    params = parse_params(args.param)
    if args.ode:
        es = sample_trajectory(OdeSpec(system=args.ode, seed=args.seed, **params))
    else:
        spec = make_scenario(args.scenario, seed=args.seed, **params)
        es = generate_events(spec)
        if args.cells:
            write_frame(centers_frame(spec.grid), args.cells)
    write_events(es, args.out)
    print(f"Wrote {len(es)} events to {args.out}")
    return EXIT_OK


def cmd_build(args) -> int:
    es = _load(args)
    grid = parse_grid(args.grid, parse_bbox(args.bbox), es.x, es.y)
    if args.chunks > 1:
        c = build_parallel(es, grid, args.h, args.dmax, chunks=args.chunks, workers=args.threads,
                           include_all_cells=args.include_all_cells)
    else:
        c = build(es, grid, args.h, args.dmax, include_all_cells=args.include_all_cells)
    write_network(c, args.out)
    print(f"Wrote chronnet with {c.n_nodes} nodes and {n_links(c)} links to {args.out}")
    return EXIT_OK


def cmd_prune(args) -> int:
    c = read_network(args.input)
    pruned = prune(c, args.tau) if args.tau is not None else prune_quantile(c, args.keep_top)
    if args.remove_isolated:
        pruned = remove_isolated(pruned)
    write_network(pruned, args.out)
    kept = n_links(pruned) / n_links(c) if n_links(c) else 0.0
    print(f"Kept {n_links(pruned)} of {n_links(c)} links ({kept:.1%}) -> {args.out}")
    return EXIT_OK


def cmd_snapshots(args) -> int:
    es = _load(args)
    grid = parse_grid(args.grid, parse_bbox(args.bbox), es.x, es.y)
    seq = build_snapshots(es, grid, args.h, args.dmax, args.dt)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for k, snap in enumerate(seq):
        name = f"snapshot_{k:04d}.csv"
        write_network(snap.chronnet, out_dir / name)
        rows.append({"window": k, "t_start": snap.t_start, "t_end": snap.t_end,
                     "nodes": snap.chronnet.n_nodes, "links": n_links(snap.chronnet), "file": name})
    write_frame(pd.DataFrame(rows, columns=["window", "t_start", "t_end", "nodes", "links", "file"]),
                out_dir / "snapshots.csv")
    print(f"Wrote {len(seq)} snapshot(s) to {out_dir}")
    return EXIT_OK


def cmd_measure(args) -> int:
    c = read_network(args.input)
    metrics = [m.strip() for m in args.metrics.split(",") if m.strip()]
    options = {"paths": {"workers": args.threads}, "weighted-paths": {"workers": args.threads}}
    results = get_analyzer_registry().run_all(c, metrics, options=options)
    write_json(results, args.out)
    if args.nodes:
        write_frame(node_frame({"degree": degree(c), "strength": strength(c)}), args.nodes)
    failed = [name for name, r in results.items() if r["status"] != "success"]
    for name in failed:
        print(f"  [ERROR] {name}: {results[name]['error']}", file=sys.stderr)
    print(f"Wrote {len(results) - len(failed)} of {len(results)} measures to {args.out}")
    return EXIT_OK if not failed else EXIT_ERROR


def cmd_fit(args) -> int:
    if args.input:
        c = read_network(args.input)
        values = list((degree(c) if args.column == "degree" else strength(c)).values())
    else:
        rng = np.random.default_rng(args.seed)
        values = sample_discrete_power_law(args.sample_gamma, args.n, rng=rng).tolist()
    if args.family == "powerlaw":
        result = fit_power_law(values, discrete=True, xmin=args.xmin).model_dump()
    elif args.family == "lognormal":
        result = fit_log_normal(values, xmin=args.xmin).model_dump()
    else:
        cmp = compare_fits(values, discrete=True)
        result = {"power_law": cmp.power_law.model_dump(), "log_normal": cmp.log_normal.model_dump(),
                  "preferred": cmp.preferred}
    if args.out:
        write_json(result, args.out)
    _print_json(result)
    return EXIT_OK


def cmd_communities(args) -> int:
    c = read_network(args.input)
    if args.method == "fastgreedy":
        d = fast_greedy(c)
        partition = cut_dendrogram(d, args.k or d.best_k)
        if args.dendrogram:
            write_frame(dendrogram_frame(d), args.dendrogram)
    else:
        partition = label_propagation(c, seed=args.seed)
    write_frame(partition_frame(partition.labels), args.out)
    _print_json({"method": args.method, "k": partition.n_communities, "q": partition.q})
    return EXIT_OK


def _grid_for_cluster(args, es) -> GridSpec:
    if args.network:
        grid = read_network(args.network).grid
        if grid is None:
            raise ValueError(f"{args.network}: metadata holds no grid; pass --grid instead")
        return grid
    if not args.grid:
        raise ValueError("cluster needs --network or --grid")
    return parse_grid(args.grid, parse_bbox(args.bbox), es.x, es.y)


def cmd_cluster(args) -> int:
    es = _load(args)
    grid = _grid_for_cluster(args, es)
    partition = Partition(labels=read_partition(args.partition), q=float("nan"))
    raw = cluster_events(es, grid, partition)
    series = correct_series(raw, args.delta) if args.delta else raw
    write_frame(series_frame(series.labels.tolist(), t=es.t.tolist(), raw_community=raw.labels.tolist()), args.out)
    print(f"Labelled {len(series)} events ({raw.noise_count} noise) -> {args.out}")
    return EXIT_OK


def cmd_changes(args) -> int:
    frame = pd.read_csv(args.series)
    if "community" not in frame.columns:
        raise ValueError(f"{args.series}: series CSV lacks a 'community' column")
    series = CommunitySeries(frame["community"].to_numpy())
    if args.delta:
        series = correct_series(series, args.delta)
    result = {"delta": args.delta, "change_points": change_points(series)}
    if args.out:
        write_json(result, args.out)
    _print_json(result)
    return EXIT_OK


def cmd_outliers(args) -> int:
    c = read_network(args.input)
    selection = outlier_nodes(c, args.metric, args.top)
    values = degree(c) if args.metric == "degree" else strength(c)
    write_frame(node_frame({args.metric: {n: values[n] for n in selection.nodes}}), args.out)
    if args.remove_out:
        write_network(remove_nodes(c, selection.nodes), args.remove_out)
    _print_json({"nodes": list(selection.nodes), "cutoff": selection.cutoff, "degenerate": selection.degenerate})
    return EXIT_OK


def cmd_run(args) -> int:
    config = RunConfig.model_validate_json(Path(args.config).read_text(encoding="utf-8"))
    out = PipelineRunner(config, output_dir=args.out_dir, threads=args.threads).run()
    print(f"Run complete: {out}")
    return EXIT_OK


def cmd_repro(args) -> int:
    seeds = [int(s) for s in args.seeds.split(",")] if args.seeds else None
    runner = ReproRunner(output_dir=args.out_dir, seeds=seeds, threads=args.threads)
    out = runner.run(args.figure)
    summary = read_json(out / "summary.json")
    for check in summary["checks"]:
        print(f"  [{'PASS' if check['passed'] else 'FAIL'}] {check['name']}: {check['value']} ({check['threshold']})")
    print(f"{args.figure}: {summary['status']} -> {out}")
    return EXIT_OK if summary["status"] == "PASS" else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chronnet",
        description="Chronological networks from spatiotemporal events",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  chronnet generate --scenario power-law --seed 3 --out events.csv
  chronnet build --events events.csv --grid rect:20x20 --bbox 0,20,0,20 --out net.csv
  chronnet run --config run.json --threads 4
  chronnet repro fig2
        """,
    )
    parser.add_argument("--threads", type=int, default=None, help="Worker threads (env CHRONNET_THREADS)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("generate", help="Generate events from a scenario or ODE system")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", choices=scenario_names())
    src.add_argument("--ode", choices=["lorenz", "rossler"])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--param", action="append", metavar="K=V", help="Scenario parameter override (repeatable)")
    p.add_argument("--cells", type=Path, help="Also write the cell-center table")
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("build", help="Build a chronnet from events")
    _add_event_options(p)
    _add_grid_options(p)
    p.add_argument("--h", type=int, default=1, help="Window offset between linked events")
    p.add_argument("--dmax", type=float, default=float("inf"), help="Maximum link distance (inf: none)")
    p.add_argument("--chunks", type=int, default=1, help="Split construction into chunks")
    p.add_argument("--include-all-cells", action="store_true")
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("prune", help="Drop weak links")
    p.add_argument("--input", required=True, type=Path)
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--tau", type=float, help="Keep links with weight > tau")
    how.add_argument("--keep-top", type=float, help="Keep this fraction of the heaviest links")
    p.add_argument("--remove-isolated", action="store_true")
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("snapshots", help="One chronnet per time window")
    _add_event_options(p)
    _add_grid_options(p)
    p.add_argument("--dt", type=float, required=True, help="Window length in ticks")
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--dmax", type=float, default=float("inf"))
    p.add_argument("--out-dir", required=True, type=Path)
    p.set_defaults(func=cmd_snapshots)

    p = sub.add_parser("measure", help="Characterize a chronnet")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--metrics", default=",".join(get_analyzer_registry().list_all()),
                   help="Comma-separated analyzers")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--nodes", type=Path, help="Per-node degree/strength CSV")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("fit", help="Fit degree or strength distributions")
    data = p.add_mutually_exclusive_group(required=True)
    data.add_argument("--input", type=Path)
    data.add_argument("--sample-gamma", type=float, help="Self-check on a sampled discrete power law")
    p.add_argument("--column", choices=["degree", "strength"], default="degree")
    p.add_argument("--family", choices=["powerlaw", "lognormal", "both"], default="powerlaw")
    p.add_argument("--xmin", type=float, default=None)
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("communities", help="Detect communities")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--method", choices=["fastgreedy", "labelprop"], default="fastgreedy")
    p.add_argument("--k", type=int, default=None, help="Cut the dendrogram at k communities")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--dendrogram", type=Path, help="Write the merge table")
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_communities)

    p = sub.add_parser("cluster", help="Label events with their cell's community")
    _add_event_options(p)
    p.add_argument("--partition", required=True, type=Path)
    p.add_argument("--network", type=Path, help="Network whose metadata holds the grid")
    _add_grid_options(p, required=False)
    p.add_argument("--delta", type=int, default=None, help="Correction window radius (odd)")
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("changes", help="Change points of a community series")
    p.add_argument("--series", required=True, type=Path)
    p.add_argument("--delta", type=int, default=None, help="Correct the series first")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_changes)

    p = sub.add_parser("outliers", help="Top degree / strength cells")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--metric", choices=["degree", "strength"], default="degree")
    p.add_argument("--top", type=float, default=0.02, help="Top fraction of nodes")
    p.add_argument("--remove-out", type=Path, help="Write the network without the outliers")
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_outliers)

    p = sub.add_parser("run", help="Run a pipeline from a JSON RunConfig")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("repro", help="Reproduce an artificial experiment")
    p.add_argument("figure", choices=list(FIGURES))
    p.add_argument("--seeds", help="Comma-separated seeds (default 1..10)")
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=cmd_repro)
    return parser


def main(args: Optional[list] = None) -> int:
    """Main entry point for the CLI."""
    parser = build_parser()
    parsed_args = parser.parse_args(args)

    if parsed_args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    else:
        logging.getLogger().setLevel(get_settings().log_level.upper())

    if not parsed_args.command:
        parser.print_help()
        return EXIT_OK

    try:
        if parsed_args.threads is not None:
            os.environ["CHRONNET_THREADS"] = str(parsed_args.threads)
            get_settings.cache_clear()
        if getattr(parsed_args, "seed", 0) is None:
            parsed_args.seed = get_settings().default_seed
        return parsed_args.func(parsed_args)
    except ValidationError as e:
        print(f"Error: invalid configuration: {e}", file=sys.stderr)
        logger.debug("Validation error", exc_info=True)
        return EXIT_INVALID
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        logger.exception("Command failed")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
