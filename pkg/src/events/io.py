"""Reading and writing event files."""
import logging
from pathlib import Path
from typing import Optional, Union

import pandas as pd

from src.events.filters import FilterSpec, apply_filters
from src.events.models import EventDataError, EventSet
from src.events.registry import get_registry

logger = logging.getLogger(__name__)


def load_events(
    path: Union[str, Path],
    format: str = "generic-csv",
    filters: Optional[FilterSpec] = None,
) -> EventSet:
    """Load events from a file.

    Args:
        path: File to read.
        format: Registered format name ("generic-csv" or "mcd14ml-csv").
        filters: Optional confidence, allow-list and bbox filters.

    Returns:
        EventSet in file order; its sorted flag reflects the data.

    Raises:
        EventDataError: Missing file, unknown format or malformed content.
    """
    path = Path(path)
    if not path.is_file():
        raise EventDataError(f"Event file not found: {path}")
    es = get_registry().load(format, path, filters)
    return apply_filters(es, filters)


def _format_number(value) -> str:
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def write_events(es: EventSet, path: Union[str, Path]) -> Path:
    """Write events in the generic CSV schema (t,x,y then sorted attribute columns).

    Floats are written with shortest round-trip precision, so load_events
    reproduces the same EventSet.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    t_values = es.t.tolist()
    frame = {
        "t": [_format_number(v) for v in t_values],
        "x": [repr(v) for v in es.x.tolist()],
        "y": [repr(v) for v in es.y.tolist()],
    }
    for name in es.attr_names:
        frame[name] = ["" if v is None else str(v) for v in es.attr(name)]
    pd.DataFrame(frame, columns=["t", "x", "y", *es.attr_names]).to_csv(path, index=False)
    logger.info("Wrote %d events to %s", len(es), path)
    return path
