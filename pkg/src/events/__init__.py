"""Event data model, ordering and file ingestion."""
from src.events.filters import FilterSpec, apply_filters
from src.events.io import load_events, write_events
from src.events.models import (
    Event,
    EventDataError,
    EventSet,
    group_bounds,
    group_parallel,
    sort_events,
)
from src.events.registry import LoaderRegistry, get_registry

__all__ = [
    "Event",
    "EventDataError",
    "EventSet",
    "FilterSpec",
    "LoaderRegistry",
    "apply_filters",
    "get_registry",
    "group_bounds",
    "group_parallel",
    "load_events",
    "sort_events",
    "write_events",
]
