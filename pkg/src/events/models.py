"""Event data model, chronological ordering and parallel-event grouping."""
from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Optional, Union, overload

import numpy as np

logger = logging.getLogger(__name__)

Timestamp = Union[int, float]


class EventDataError(ValueError):
    """Raised for invalid events, event files or ordering violations."""


@dataclass(frozen=True)
class Event:
    """One timestamped spatial occurrence.

    Attributes:
        t: Integer tick or real-valued timestamp.
        x: Spatial coordinate in dataset units.
        y: Spatial coordinate in dataset units.
        attrs: Optional string attributes (e.g. "confidence", "type", "period").
    """
    t: Timestamp
    x: float
    y: float
    attrs: Mapping[str, str] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if isinstance(self.t, (bool, np.bool_)):
            raise EventDataError(f"Timestamp must be numeric, got {self.t!r}")
        if isinstance(self.t, np.integer):
            object.__setattr__(self, "t", int(self.t))
        elif not isinstance(self.t, int):
            object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        for name in ("t", "x", "y"):
            if not math.isfinite(getattr(self, name)):
                raise EventDataError(f"Event field {name} must be finite, got {getattr(self, name)!r}")
        object.__setattr__(self, "attrs", {str(k): str(v) for k, v in dict(self.attrs).items()})


class EventSet(Sequence[Event]):
    """Immutable, column-backed sequence of events.

    Columns are numpy arrays (t, x, y) plus one object array per attribute
    name, where None marks an event without that attribute. Indexing returns
    Event objects; slicing returns a new EventSet.
    """

    __slots__ = ("_t", "_x", "_y", "_attrs", "_sorted")

    def __init__(
        self,
        t: np.ndarray,
        x: np.ndarray,
        y: np.ndarray,
        attrs: Optional[Mapping[str, np.ndarray]] = None,
        sorted: Optional[bool] = None,
    ):
        t = np.asarray(t)
        if t.dtype.kind == "b" or t.dtype.kind not in "iuf":
            if t.size == 0:
                t = t.astype(np.int64)
            else:
                raise EventDataError(f"Timestamps must be numeric, got dtype {t.dtype}")
        t = t.astype(np.int64) if t.dtype.kind in "iu" else t.astype(np.float64)
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if not (t.shape == x.shape == y.shape) or t.ndim != 1:
            raise EventDataError("t, x and y must be one-dimensional arrays of equal length")
        for name, column in (("t", t), ("x", x), ("y", y)):
            if column.size and not np.all(np.isfinite(column)):
                bad = int(np.flatnonzero(~np.isfinite(column))[0])
                raise EventDataError(f"Event {bad}: field {name} is not finite")

        columns = {}
        for key, values in (attrs or {}).items():
            values = np.asarray(values, dtype=object)
            if values.shape != t.shape:
                raise EventDataError(f"Attribute column {key!r} has the wrong length")
            columns[str(key)] = values

        is_sorted = bool(t.size < 2 or np.all(t[1:] >= t[:-1]))
        if sorted and not is_sorted:
            raise EventDataError("EventSet declared sorted but timestamps decrease")

        for column in (t, x, y, *columns.values()):
            column.flags.writeable = False
        self._t = t
        self._x = x
        self._y = y
        self._attrs = columns
        self._sorted = is_sorted

    # ----- construction -----

    @classmethod
    def from_events(cls, events: Iterable[Event]) -> "EventSet":
        """Build an EventSet from Event objects, preserving order."""
        events = list(events)
        keys = sorted({k for e in events for k in e.attrs})
        if any(isinstance(e.t, float) for e in events):
            t = np.array([float(e.t) for e in events], dtype=np.float64)
        else:
            t = np.array([e.t for e in events], dtype=np.int64)
        attrs = {
            key: np.array([e.attrs.get(key) for e in events], dtype=object)
            for key in keys
        }
        return cls(
            t,
            np.array([e.x for e in events], dtype=np.float64),
            np.array([e.y for e in events], dtype=np.float64),
            attrs,
        )

    @classmethod
    def empty(cls) -> "EventSet":
        """An EventSet with no events."""
        return cls(np.array([], dtype=np.int64), np.array([]), np.array([]))

    # ----- sequence protocol -----

    def __len__(self) -> int:
        return int(self._t.size)

    @overload
    def __getitem__(self, index: int) -> Event: ...

    @overload
    def __getitem__(self, index: slice) -> "EventSet": ...

    def __getitem__(self, index):
        if isinstance(index, slice):
            return self.take(np.arange(len(self))[index])
        i = int(index)
        t = self._t[i]
        attrs = {k: v[i] for k, v in self._attrs.items() if v[i] is not None}
        return Event(t=t.item(), x=float(self._x[i]), y=float(self._y[i]), attrs=attrs)

    def __iter__(self) -> Iterator[Event]:
        for i in range(len(self)):
            yield self[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, EventSet):
            return NotImplemented
        return list(self) == list(other)

    def __repr__(self) -> str:
        return f"EventSet(n={len(self)}, sorted={self._sorted})"

    # ----- columns -----

    @property
    def t(self) -> np.ndarray:
        return self._t

    @property
    def x(self) -> np.ndarray:
        return self._x

    @property
    def y(self) -> np.ndarray:
        return self._y

    @property
    def attr_names(self) -> list[str]:
        return sorted(self._attrs)

    def attr(self, name: str) -> np.ndarray:
        """Attribute column (object array, None where missing)."""
        if name not in self._attrs:
            raise EventDataError(f"Unknown event attribute {name!r}")
        return self._attrs[name]

    @property
    def sorted(self) -> bool:
        return self._sorted

    @property
    def is_tick_data(self) -> bool:
        return self._t.dtype.kind in "iu"

    @property
    def time_span(self) -> Timestamp:
        """Distinct timestamp count for tick data, max(t) - min(t) otherwise."""
        if len(self) == 0:
            return 0
        if self.is_tick_data:
            return int(np.unique(self._t).size)
        return float(self._t.max() - self._t.min())

    def take(self, indices: np.ndarray) -> "EventSet":
        """New EventSet with events at the given positions, in that order."""
        indices = np.asarray(indices, dtype=np.int64)
        return EventSet(
            self._t[indices],
            self._x[indices],
            self._y[indices],
            {k: v[indices] for k, v in self._attrs.items()},
        )


def sort_events(es: EventSet) -> EventSet:
    """Stable sort by timestamp; ties keep their input order."""
    if es.sorted:
        return es
    order = np.argsort(es.t, kind="stable")
    return es.take(order)


def group_bounds(es: EventSet) -> np.ndarray:
    """Start offsets of consecutive equal-timestamp runs, plus len(es) as sentinel."""
    if not es.sorted:
        raise EventDataError("group_parallel requires a sorted EventSet")
    if len(es) == 0:
        return np.array([0], dtype=np.int64)
    starts = np.flatnonzero(es.t[1:] != es.t[:-1]) + 1
    return np.concatenate(([0], starts, [len(es)])).astype(np.int64)


def group_parallel(es: EventSet) -> list[tuple[Timestamp, tuple[Event, ...]]]:
    """Collapse runs of equal timestamps into (timestamp, events) groups."""
    bounds = group_bounds(es)
    groups = []
    for start, stop in zip(bounds[:-1], bounds[1:]):
        members = tuple(es[i] for i in range(start, stop))
        groups.append((members[0].t, members))
    return groups
