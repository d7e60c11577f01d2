"""Deterministic CSV / JSON writers for run artifacts."""
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Union

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def to_jsonable(value: Any) -> Any:
    """Plain-JSON form: numpy scalars unwrapped, NaN/inf to None, tuples to lists."""
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set)):
        items = sorted(value) if isinstance(value, set) else value
        return [to_jsonable(v) for v in items]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, Path):
        return value.as_posix()
    return value


def write_json(data: Any, path: PathLike) -> Path:
    """UTF-8 JSON with sorted keys and a trailing newline."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(to_jsonable(data), indent=2, sort_keys=True, allow_nan=False)
    path.write_text(text + "\n", encoding="utf-8")
    logger.debug("Wrote %s", path)
    return path


def read_json(path: PathLike) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def write_frame(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    logger.debug("Wrote %s (%d rows)", path, len(frame))
    return path


def distribution_frame(dist: Mapping[int, float], column: str = "value") -> pd.DataFrame:
    """Two-column table: value, p."""
    return pd.DataFrame({column: list(dist.keys()), "p": list(dist.values())})


def node_frame(columns: Dict[str, Mapping[int, float]]) -> pd.DataFrame:
    """One row per node (sorted), one column per per-node measure."""
    nodes = sorted({n for values in columns.values() for n in values})
    data = {"node": nodes}
    for name, values in columns.items():
        data[name] = [values.get(n) for n in nodes]
    return pd.DataFrame(data)


def partition_frame(labels: Mapping[int, int]) -> pd.DataFrame:
    nodes = sorted(labels)
    return pd.DataFrame({"node": nodes, "community": [labels[n] for n in nodes]})


def read_partition(path: PathLike) -> Dict[int, int]:
    frame = pd.read_csv(path)
    missing = {"node", "community"} - set(frame.columns)
    if missing:
        raise ValueError(f"{path}: partition CSV lacks column(s) {sorted(missing)}")
    return {int(n): int(c) for n, c in zip(frame["node"], frame["community"])}


def series_frame(labels: Iterable[int], **extra: Iterable) -> pd.DataFrame:
    """Per-event table: index (1-based), community, plus optional columns."""
    labels = list(labels)
    data = {"index": list(range(1, len(labels) + 1)), "community": labels}
    for name, values in extra.items():
        data[name] = list(values)
    return pd.DataFrame(data)


def dendrogram_frame(d) -> pd.DataFrame:
    """One row per merge: step, left, right, dq, q, communities after the merge."""
    n = len(d.leaves)
    return pd.DataFrame(
        {
            "step": list(range(1, len(d.merges) + 1)),
            "left": [m.left for m in d.merges],
            "right": [m.right for m in d.merges],
            "dq": [m.dq for m in d.merges],
            "q": [m.q for m in d.merges],
            "communities": [n - i for i in range(1, len(d.merges) + 1)],
        }
    )
