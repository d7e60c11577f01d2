"""Grid specification for spatial discretization."""
import math
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

CellId = int


class GridError(ValueError):
    """Raised for invalid grid specs, out-of-bbox points and unknown cells."""


class GridSpec(BaseModel):
    """Rectangular (nx by ny) or planar hexagonal (circumradius r) grid over a bbox.

    bbox is (xmin, xmax, ymin, ymax) in data units. Instances are frozen and
    hashable, so derived layouts can be cached per spec.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["rect", "hex"] = "rect"
    bbox: Tuple[float, float, float, float]
    nx: Optional[int] = None
    ny: Optional[int] = None
    r: Optional[float] = None

    @model_validator(mode="after")
    def _validate(self) -> "GridSpec":
        xmin, xmax, ymin, ymax = self.bbox
        if not all(math.isfinite(v) for v in self.bbox):
            raise ValueError(f"bbox must be finite, got {self.bbox}")
        if not (xmin < xmax and ymin < ymax):
            raise ValueError(f"bbox must satisfy xmin < xmax and ymin < ymax, got {self.bbox}")
        if self.kind == "rect":
            if self.nx is None or self.ny is None or self.nx < 1 or self.ny < 1:
                raise ValueError(f"rect grid needs nx >= 1 and ny >= 1, got nx={self.nx}, ny={self.ny}")
        else:
            if self.r is None or not (self.r > 0) or not math.isfinite(self.r):
                raise ValueError(f"hex grid needs a finite circumradius r > 0, got r={self.r}")
        return self

    @classmethod
    def rect(cls, nx: int, ny: int, bbox: Tuple[float, float, float, float]) -> "GridSpec":
        return cls(kind="rect", bbox=bbox, nx=nx, ny=ny)

    @classmethod
    def hex(cls, r: float, bbox: Tuple[float, float, float, float]) -> "GridSpec":
        return cls(kind="hex", bbox=bbox, r=r)

    @classmethod
    def fit(
        cls,
        xs,
        ys,
        kind: Literal["rect", "hex"] = "rect",
        nx: Optional[int] = None,
        ny: Optional[int] = None,
        r: Optional[float] = None,
    ) -> "GridSpec":
        """Grid whose bbox is the extent of the given coordinates.

        A degenerate extent (all points on one line) is widened by 0.5 on each
        side of the collapsed axis.
        """
        xs = np.asarray(xs, dtype=np.float64)
        ys = np.asarray(ys, dtype=np.float64)
        if xs.size == 0:
            raise GridError("Cannot fit a grid to zero points")
        xmin, xmax = float(xs.min()), float(xs.max())
        ymin, ymax = float(ys.min()), float(ys.max())
        if xmin == xmax:
            xmin, xmax = xmin - 0.5, xmax + 0.5
        if ymin == ymax:
            ymin, ymax = ymin - 0.5, ymax + 0.5
        return cls(kind=kind, bbox=(xmin, xmax, ymin, ymax), nx=nx, ny=ny, r=r)

    def describe(self) -> str:
        if self.kind == "rect":
            return f"rect {self.nx}x{self.ny} over {self.bbox}"
        return f"hex r={self.r} over {self.bbox}"
