"""Chronnet construction from sorted event sets.

Events are first collapsed into timestamp groups. A pair (group a, group
a + h) contributes:
  - one increment to u -> v when each group occupies a single cell u and v
    (self-loop when u == v), which is the plain consecutive-event rule;
  - otherwise one increment for every ordered pair of distinct cells
    (u in group a, v in group a + h, u != v).
Without parallel events every group is a single event, so the offset h runs
over raw event indices. Pairs farther apart than d_max (center distance) are
skipped. Events sharing a timestamp are never linked to each other.
"""
import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.config import get_settings
from src.events.models import EventSet, group_bounds
from src.grid import GridSpec, assign_cells, cell_centers, n_cells
from src.network.chronnet import Chronnet, ChronnetMeta, ConstructionError

logger = logging.getLogger(__name__)

_WINDOW_TOL = 1e-9


@dataclass(frozen=True)
class _Prepared:
    cells: np.ndarray  # CellId per event
    bounds: np.ndarray  # group start offsets + sentinel
    parallel: bool
    centers: np.ndarray
    nodes: Tuple[int, ...]

    @property
    def n_units(self) -> int:
        return len(self.bounds) - 1 if self.parallel else len(self.cells)


def _validate(es: EventSet, h: int, d_max: float) -> None:
    if not es.sorted:
        raise ConstructionError("Chronnet construction requires a sorted EventSet (use sort_events)")
    if isinstance(h, bool) or int(h) != h or h < 1:
        raise ConstructionError(f"Window h must be an integer >= 1, got {h!r}")
    if not (d_max >= 0):
        raise ConstructionError(f"d_max must be non-negative, got {d_max!r}")


def _prepare(es: EventSet, g: GridSpec, include_all_cells: bool) -> _Prepared:
    cells = assign_cells(g, es.x, es.y)
    bounds = group_bounds(es)
    parallel = len(bounds) - 1 < len(es)
    nodes = tuple(range(n_cells(g))) if include_all_cells else tuple(int(c) for c in np.unique(cells))
    return _Prepared(cells=cells, bounds=bounds, parallel=parallel, centers=cell_centers(g), nodes=nodes)


def _within(centers: np.ndarray, src: np.ndarray, dst: np.ndarray, d_max: float) -> np.ndarray:
    if math.isinf(d_max):
        return np.ones(len(src), dtype=bool)
    delta = centers[src] - centers[dst]
    return np.hypot(delta[:, 0], delta[:, 1]) <= d_max


def _count_pairs(prep: _Prepared, h: int, d_max: float, lo: int, hi: int) -> Counter:
    """Weights from pairs whose first unit index lies in [lo, hi)."""
    counts: Counter = Counter()
    hi = min(hi, prep.n_units - h)
    if hi <= lo:
        return counts

    if not prep.parallel:
        src = prep.cells[lo:hi]
        dst = prep.cells[lo + h:hi + h]
        keep = _within(prep.centers, src, dst, d_max)
        if not keep.any():
            return counts
        keys, freq = np.unique(np.column_stack([src[keep], dst[keep]]), axis=0, return_counts=True)
        counts.update({(int(u), int(v)): int(f) for (u, v), f in zip(keys, freq)})
        return counts

    group_cells: List[np.ndarray] = [
        np.unique(prep.cells[prep.bounds[a]:prep.bounds[a + 1]]) for a in range(lo, hi + h)
    ]
    for a in range(lo, hi):
        left, right = group_cells[a - lo], group_cells[a - lo + h]
        if len(left) == 1 and len(right) == 1:
            src, dst = left, right
        else:
            src = np.repeat(left, len(right))
            dst = np.tile(right, len(left))
            distinct = src != dst
            src, dst = src[distinct], dst[distinct]
        keep = _within(prep.centers, src, dst, d_max)
        counts.update(zip(src[keep].tolist(), dst[keep].tolist()))
    return counts


def _assemble(prep: _Prepared, counts: Counter, g: GridSpec, h: int, d_max: float) -> Chronnet:
    return Chronnet(
        directed=True,
        nodes=prep.nodes,
        weights=dict(counts),
        grid=g,
        meta=ChronnetMeta(h=int(h), d_max=float(d_max)),
    )


def build(
    es: EventSet,
    g: GridSpec,
    h: int = 1,
    d_max: float = math.inf,
    include_all_cells: bool = False,
) -> Chronnet:
    """Directed chronnet linking each event (group) to the one h steps later.

    Args:
        es: Sorted events.
        g: Grid assigning events to cells (nodes).
        h: Sliding-window offset, >= 1.
        d_max: Maximum center distance for a link; inf disables the cap.
        include_all_cells: Materialize every grid cell as a node, not only
            cells holding at least one event.

    Raises:
        ConstructionError: Unsorted events, h < 1 or negative d_max.
    """
    _validate(es, h, d_max)
    prep = _prepare(es, g, include_all_cells)
    counts = _count_pairs(prep, int(h), d_max, 0, prep.n_units)
    c = _assemble(prep, counts, g, h, d_max)
    logger.info(
        "Built chronnet: %d events, %d nodes, %d links, total weight %d%s",
        len(es), c.n_nodes, len(c.weights), sum(c.weights.values()),
        " (parallel events)" if prep.parallel else "",
    )
    return c


def build_parallel(
    es: EventSet,
    g: GridSpec,
    h: int = 1,
    d_max: float = math.inf,
    chunks: int = 1,
    workers: Optional[int] = None,
    include_all_cells: bool = False,
) -> Chronnet:
    """Chunked construction; always identical to build().

    The pair-start indices are split into `chunks` contiguous ranges. Each
    chunk reads h units past its end, so a pair is counted only by the chunk
    owning its first event. Partial counts are summed on a thread pool sized
    by `workers` (default: Settings.threads).
    """
    _validate(es, h, d_max)
    if isinstance(chunks, bool) or int(chunks) != chunks or chunks < 1:
        raise ConstructionError(f"chunks must be an integer >= 1, got {chunks!r}")
    prep = _prepare(es, g, include_all_cells)
    n_starts = max(prep.n_units - int(h), 0)
    edges = np.linspace(0, n_starts, int(chunks) + 1).round().astype(int)
    ranges = list(zip(edges[:-1], edges[1:]))

    workers = workers or get_settings().threads
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        partials = list(pool.map(lambda r: _count_pairs(prep, int(h), d_max, int(r[0]), int(r[1])), ranges))

    counts: Counter = Counter()
    for partial in partials:
        counts.update(partial)
    logger.debug("Merged %d chunk(s) on %d worker(s)", len(ranges), workers)
    return _assemble(prep, counts, g, h, d_max)


@dataclass(frozen=True)
class Snapshot:
    t_start: float
    t_end: float
    chronnet: Chronnet


@dataclass(frozen=True)
class SnapshotSequence:
    """Contiguous half-open windows [t_start, t_end) covering the event span."""
    windows: Tuple[Snapshot, ...]

    def __len__(self) -> int:
        return len(self.windows)

    def __iter__(self):
        return iter(self.windows)


def build_snapshots(
    es: EventSet,
    g: GridSpec,
    h: int = 1,
    d_max: float = math.inf,
    dt: float = 1.0,
) -> SnapshotSequence:
    """One independent chronnet per time window of length dt.

    Window k spans [t0 + k dt, t0 + (k + 1) dt) with t0 the first timestamp;
    windows without events yield empty chronnets. No link crosses a window
    boundary. A timestamp within 1e-9 dt below a bound belongs to the window
    that starts there, so decimal timestamps such as 0.1, 0.2, 0.3 with
    dt = 0.1 get one window each.
    """
    if not (dt > 0) or math.isinf(dt):
        raise ConstructionError(f"Window length dt must be positive and finite, got {dt!r}")
    _validate(es, h, d_max)
    if len(es) == 0:
        return SnapshotSequence(windows=())

    t0 = es.t[0].item()
    offsets = np.floor((es.t - t0) / dt + _WINDOW_TOL).astype(np.int64)
    n_windows = int(offsets[-1]) + 1
    starts = np.searchsorted(offsets, np.arange(n_windows + 1), side="left")

    windows = []
    for k in range(n_windows):
        t_start, t_end = t0 + k * dt, t0 + (k + 1) * dt
        part = es[int(starts[k]):int(starts[k + 1])]
        c = build(part, g, h, d_max).with_meta(window=(t_start, t_end))
        windows.append(Snapshot(t_start=t_start, t_end=t_end, chronnet=c))
    logger.info("Built %d snapshot(s) of length %g", n_windows, dt)
    return SnapshotSequence(windows=tuple(windows))
