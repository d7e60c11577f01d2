"""Community time series of events, smoothing and change points."""
import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from sklearn.metrics import adjusted_rand_score

from src.events import EventSet
from src.grid import GridSpec, assign_cells
from src.mining.communities import MiningError, Partition

logger = logging.getLogger(__name__)

NOISE = -1


@dataclass(frozen=True)
class CommunitySeries:
    """Community label per event in time order; NOISE marks events outside the partition."""
    labels: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def noise_count(self) -> int:
        return int((self.labels == NOISE).sum())


def cluster_events(es: EventSet, grid: GridSpec, partition: Partition) -> CommunitySeries:
    """Label each event with the community of its cell."""
    cells = assign_cells(grid, es.x, es.y)
    labels = np.fromiter((partition.labels.get(int(cell), NOISE) for cell in cells), dtype=np.int64, count=len(cells))
    series = CommunitySeries(labels)
    if series.noise_count:
        logger.warning("%d of %d events fall in cells outside the partition", series.noise_count, len(series))
    return series


def correct_series(cs: CommunitySeries, delta: int) -> CommunitySeries:
    """Replace c_t by v when the delta labels on each side of t all equal v.

    Decisions use the uncorrected series only, so corrections never cascade.
    The first and last delta positions are kept as they are.

    Raises:
        MiningError: delta not odd and positive, or series not longer than 2 * delta.
    """
    if delta < 1 or delta % 2 == 0:
        raise MiningError(f"delta must be an odd positive integer, got {delta}")
    n = len(cs)
    if n <= 2 * delta:
        raise MiningError(f"Series of length {n} is too short for delta={delta}")
    original = cs.labels
    windows = sliding_window_view(original, 2 * delta + 1)
    sides = np.delete(windows, delta, axis=1)
    lo, hi = sides.min(axis=1), sides.max(axis=1)
    uniform = lo == hi
    corrected = original.copy()
    positions = np.arange(delta, n - delta)
    corrected[positions[uniform]] = lo[uniform]
    changed = int((corrected != original).sum())
    logger.info("Corrected %d of %d labels (delta=%d)", changed, n, delta)
    return CommunitySeries(corrected)


def change_points(cs: CommunitySeries) -> List[int]:
    """1-based indices t (t >= 2) with c_t != c_{t-1}."""
    labels = cs.labels
    if len(labels) < 2:
        return []
    return (np.flatnonzero(labels[1:] != labels[:-1]) + 2).tolist()


def ground_truth_boundaries(labels: Sequence) -> List[int]:
    """1-based indices where a ground-truth label sequence switches value."""
    values = np.asarray(labels)
    if len(values) < 2:
        return []
    return (np.flatnonzero(values[1:] != values[:-1]) + 2).tolist()


def adjusted_rand_index(truth: Sequence, predicted: Sequence) -> float:
    if len(truth) != len(predicted):
        raise MiningError(f"Label sequences differ in length: {len(truth)} vs {len(predicted)}")
    return float(adjusted_rand_score(np.asarray(truth), np.asarray(predicted)))


def change_point_hits(found: Sequence[int], truth: Sequence[int], tolerance: int) -> int:
    """Number of true boundaries with a detected change point within +-tolerance events."""
    found_arr = np.asarray(sorted(found), dtype=np.int64)
    if found_arr.size == 0:
        return 0
    hits = 0
    for boundary in truth:
        idx = np.searchsorted(found_arr, boundary)
        near = [found_arr[i] for i in (idx - 1, idx) if 0 <= i < found_arr.size]
        if any(abs(int(f) - boundary) <= tolerance for f in near):
            hits += 1
    return hits
