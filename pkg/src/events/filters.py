"""Row filters applied while loading events."""
import logging
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.events.models import EventSet

logger = logging.getLogger(__name__)


class FilterSpec(BaseModel):
    """Filters for load_events.

    min_confidence only applies to MCD14ML input; None means the configured
    default (CHRONNET_MIN_CONFIDENCE). Rows are kept when confidence is
    strictly greater than the threshold.
    """
    model_config = ConfigDict(frozen=True)

    min_confidence: Optional[float] = None
    granularity: Literal["day", "minute"] = "day"
    # Attribute allow-list, e.g. {"type": ["0"]}. Empty means no restriction.
    allow: Dict[str, List[str]] = Field(default_factory=dict)
    bbox: Optional[Tuple[float, float, float, float]] = None

    @model_validator(mode="after")
    def _check_bbox(self) -> "FilterSpec":
        if self.bbox is not None:
            xmin, xmax, ymin, ymax = self.bbox
            if not (xmin <= xmax and ymin <= ymax):
                raise ValueError(f"Filter bbox must satisfy xmin <= xmax and ymin <= ymax, got {self.bbox}")
        return self


def apply_filters(es: EventSet, filters: Optional[FilterSpec]) -> EventSet:
    """Apply the format-independent parts of a FilterSpec (allow-list, bbox)."""
    if filters is None or len(es) == 0:
        return es
    keep = np.ones(len(es), dtype=bool)
    for name, allowed in filters.allow.items():
        if name not in es.attr_names:
            keep[:] = False
            continue
        values = es.attr(name)
        keep &= np.array([v is not None and v in allowed for v in values], dtype=bool)
    if filters.bbox is not None:
        xmin, xmax, ymin, ymax = filters.bbox
        keep &= (es.x >= xmin) & (es.x <= xmax) & (es.y >= ymin) & (es.y <= ymax)
    if keep.all():
        return es
    logger.info("Filters kept %d of %d events", int(keep.sum()), len(es))
    return es.take(np.flatnonzero(keep))
