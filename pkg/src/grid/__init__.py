"""Spatial discretization of event coordinates into grid cells."""
from src.grid.cells import (
    assign_cell,
    assign_cells,
    cell_center,
    cell_centers,
    cell_distance,
    cells,
    centers_frame,
    n_cells,
    rect_cell,
    rect_index,
)
from src.grid.spec import CellId, GridError, GridSpec

__all__ = [
    "CellId",
    "GridError",
    "GridSpec",
    "assign_cell",
    "assign_cells",
    "cell_center",
    "cell_centers",
    "cell_distance",
    "cells",
    "centers_frame",
    "n_cells",
    "rect_cell",
    "rect_index",
]
