"""Point-to-cell assignment, cell centers and distances.

Rectangular cells use half-open binning with the upper bbox edge clamped into
the last row/column; ids are j * nx + i. Hexagonal cells are flat-top hexagons
in an odd-q offset layout anchored at (xmin, ymin): column q sits at
x = xmin + 1.5 r q and odd columns are shifted up by half a row. Only
hexagons whose center lies inside the bbox exist; ids follow (q, row) order.
Points go to the nearest existing center, ties to the lowest id.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np
import pandas as pd
from scipy.spatial import cKDTree

from src.grid.spec import CellId, GridError, GridSpec

logger = logging.getLogger(__name__)

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class HexLayout:
    centers: np.ndarray  # (n, 2)
    tree: cKDTree


@lru_cache(maxsize=64)
def _hex_layout(g: GridSpec) -> HexLayout:
    xmin, xmax, ymin, ymax = g.bbox
    r = g.r
    eps = 1e-9 * r
    n_cols = int(math.floor((xmax - xmin) / (1.5 * r) + 1e-9)) + 1
    centers = []
    for q in range(n_cols):
        cx = xmin + 1.5 * r * q
        if cx > xmax + eps:
            break
        offset = 0.5 * (q & 1)
        row = 0
        while True:
            cy = ymin + _SQRT3 * r * (row + offset)
            if cy > ymax + eps:
                break
            centers.append((cx, cy))
            row += 1
    array = np.array(centers, dtype=np.float64).reshape(-1, 2)
    logger.debug("Hex layout %s has %d cells", g.describe(), len(array))
    return HexLayout(centers=array, tree=cKDTree(array))


def n_cells(g: GridSpec) -> int:
    if g.kind == "rect":
        return g.nx * g.ny
    return len(_hex_layout(g).centers)


def cells(g: GridSpec) -> List[CellId]:
    """Every valid CellId of the grid, ascending."""
    return list(range(n_cells(g)))


def rect_cell(g: GridSpec, i: int, j: int) -> CellId:
    """CellId of rect column i, row j."""
    if g.kind != "rect":
        raise GridError("rect_cell requires a rect grid")
    if not (0 <= i < g.nx and 0 <= j < g.ny):
        raise GridError(f"Cell ({i}, {j}) outside {g.nx}x{g.ny} grid")
    return j * g.nx + i


def rect_index(g: GridSpec, c: CellId) -> Tuple[int, int]:
    """(i, j) column/row of a rect CellId."""
    _check_cell(g, c)
    if g.kind != "rect":
        raise GridError("rect_index requires a rect grid")
    return c % g.nx, c // g.nx


def _check_cell(g: GridSpec, c) -> None:
    if isinstance(c, (bool, np.bool_)) or not isinstance(c, (int, np.integer)):
        raise GridError(f"CellId must be an integer, got {c!r}")
    if not 0 <= int(c) < n_cells(g):
        raise GridError(f"Invalid CellId {c} for {g.describe()}")


def _check_inside(g: GridSpec, xs: np.ndarray, ys: np.ndarray) -> None:
    xmin, xmax, ymin, ymax = g.bbox
    outside = ~((xs >= xmin) & (xs <= xmax) & (ys >= ymin) & (ys <= ymax))
    if outside.any():
        k = int(np.flatnonzero(outside)[0])
        raise GridError(f"Point ({xs[k]}, {ys[k]}) lies outside grid bbox {g.bbox}")


def assign_cells(g: GridSpec, xs, ys) -> np.ndarray:
    """Vectorized assign_cell; returns an int64 array of CellIds."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.shape != ys.shape:
        raise GridError("xs and ys must have the same shape")
    if xs.size == 0:
        return np.array([], dtype=np.int64)
    _check_inside(g, xs, ys)
    xmin, xmax, ymin, ymax = g.bbox

    if g.kind == "rect":
        i = np.floor((xs - xmin) / ((xmax - xmin) / g.nx)).astype(np.int64)
        j = np.floor((ys - ymin) / ((ymax - ymin) / g.ny)).astype(np.int64)
        i = np.clip(i, 0, g.nx - 1)
        j = np.clip(j, 0, g.ny - 1)
        return j * g.nx + i

    layout = _hex_layout(g)
    points = np.column_stack([xs, ys])
    k = min(3, len(layout.centers))
    dist, idx = layout.tree.query(points, k=k)
    if k == 1:
        return idx.astype(np.int64)
    # Up to three centers can be equidistant (hexagon vertex); the lowest id wins.
    tol = 1e-9 * g.r
    tied = dist <= dist[:, :1] + tol
    candidates = np.where(tied, idx, np.iinfo(np.int64).max)
    return candidates.min(axis=1).astype(np.int64)


def assign_cell(g: GridSpec, x: float, y: float) -> CellId:
    """CellId containing (x, y)."""
    return int(assign_cells(g, [x], [y])[0])


def cell_centers(g: GridSpec) -> np.ndarray:
    """(n_cells, 2) array of centers indexed by CellId."""
    if g.kind == "hex":
        return _hex_layout(g).centers
    xmin, xmax, ymin, ymax = g.bbox
    ids = np.arange(g.nx * g.ny)
    cx = xmin + (ids % g.nx + 0.5) * ((xmax - xmin) / g.nx)
    cy = ymin + (ids // g.nx + 0.5) * ((ymax - ymin) / g.ny)
    return np.column_stack([cx, cy])


def cell_center(g: GridSpec, c: CellId) -> Tuple[float, float]:
    """Geometric center of a cell; assign_cell(g, *cell_center(g, c)) == c."""
    _check_cell(g, c)
    c = int(c)
    if g.kind == "hex":
        x, y = _hex_layout(g).centers[c]
        return float(x), float(y)
    xmin, xmax, ymin, ymax = g.bbox
    i, j = c % g.nx, c // g.nx
    return (
        xmin + (i + 0.5) * ((xmax - xmin) / g.nx),
        ymin + (j + 0.5) * ((ymax - ymin) / g.ny),
    )


def cell_distance(g: GridSpec, a: CellId, b: CellId) -> float:
    """Euclidean distance between cell centers."""
    if a == b:
        _check_cell(g, a)
        return 0.0
    ax, ay = cell_center(g, a)
    bx, by = cell_center(g, b)
    return math.hypot(ax - bx, ay - by)


def centers_frame(g: GridSpec) -> pd.DataFrame:
    """CellId to center table (columns cell, x, y) for mapping and plotting."""
    centers = cell_centers(g)
    return pd.DataFrame({
        "cell": np.arange(len(centers), dtype=np.int64),
        "x": centers[:, 0],
        "y": centers[:, 1],
    })
