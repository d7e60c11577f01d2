"""Edge-list CSV + JSON metadata persistence for chronnets."""
import json
import logging
import math
import re
from pathlib import Path
from typing import Optional, Union

import pandas as pd
from pydantic import ValidationError

from src.grid import GridSpec
from src.network.chronnet import Chronnet, ChronnetMeta, ConstructionError

logger = logging.getLogger(__name__)

_INT_PATTERN = re.compile(r"^[+-]?\d+$")


class NetworkFormatError(ValueError):
    """Raised for malformed edge-list or metadata files."""


def default_meta_path(path: Path) -> Path:
    return Path(path).with_suffix(".meta.json")


def meta_document(c: Chronnet) -> dict:
    m = c.meta
    return {
        "directed": c.directed,
        "h": m.h,
        "d_max": None if math.isinf(m.d_max) else m.d_max,
        "tau": m.tau,
        "keep_fraction": m.keep_fraction,
        "window": list(m.window) if m.window is not None else None,
        "grid": c.grid.model_dump(mode="json") if c.grid is not None else None,
        "nodes": list(c.nodes),
    }


def write_network(c: Chronnet, path: Union[str, Path], meta_path: Optional[Union[str, Path]] = None) -> Path:
    """Write `src,dst,weight` rows (sorted by link) and the companion meta JSON."""
    path = Path(path)
    meta_path = Path(meta_path) if meta_path else default_meta_path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta_path.parent.mkdir(parents=True, exist_ok=True)
    rows = [(u, v, w) for (u, v), w in c.weights.items()]
    pd.DataFrame(rows, columns=["src", "dst", "weight"]).to_csv(path, index=False)
    meta_path.write_text(json.dumps(meta_document(c), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info("Wrote %d links to %s (meta %s)", len(rows), path, meta_path)
    return path


def _read_meta(meta_path: Path) -> dict:
    try:
        doc = json.loads(meta_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise NetworkFormatError(f"{meta_path}: invalid JSON: {e}") from e
    if not isinstance(doc, dict) or "directed" not in doc:
        raise NetworkFormatError(f"{meta_path}: metadata must be an object with a 'directed' field")
    return doc


def read_network(path: Union[str, Path], meta_path: Optional[Union[str, Path]] = None) -> Chronnet:
    """Read a chronnet written by write_network.

    Without a metadata file the network is read as directed, with nodes taken
    from the links and default construction parameters.

    Raises:
        NetworkFormatError: Missing file, bad header, non-integer ids, weights
            below 1 or duplicate links (message names the line).
    """
    path = Path(path)
    if not path.is_file():
        raise NetworkFormatError(f"Network file not found: {path}")
    meta_path = Path(meta_path) if meta_path else default_meta_path(path)
    if meta_path.is_file():
        doc = _read_meta(meta_path)
    else:
        logger.warning("No metadata at %s; reading %s as a directed chronnet", meta_path, path)
        doc = {"directed": True}

    try:
        df = pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError as e:
        raise NetworkFormatError(f"{path}: file is empty (no header)") from e
    except pd.errors.ParserError as e:
        raise NetworkFormatError(f"{path}: malformed row: {e}") from e
    if list(df.columns) != ["src", "dst", "weight"]:
        raise NetworkFormatError(f"{path}: header must be src,dst,weight, got {','.join(df.columns)}")

    directed = bool(doc["directed"])
    weights = {}
    for index, row in enumerate(df.itertuples(index=False), start=2):
        values = [str(v).strip() for v in row]
        if not all(_INT_PATTERN.match(v) for v in values):
            raise NetworkFormatError(f"{path}, line {index}: expected integers, got {','.join(values)}")
        u, v, w = (int(x) for x in values)
        if w < 1:
            raise NetworkFormatError(f"{path}, line {index}: weight must be >= 1, got {w}")
        if not directed and u > v:
            u, v = v, u
        if (u, v) in weights:
            raise NetworkFormatError(f"{path}, line {index}: duplicate link ({u}, {v})")
        weights[(u, v)] = w

    nodes = doc.get("nodes")
    if nodes is None:
        nodes = sorted({n for key in weights for n in key})
    try:
        grid = GridSpec(**doc["grid"]) if doc.get("grid") else None
    except (TypeError, ValidationError) as e:
        raise NetworkFormatError(f"{meta_path}: invalid grid: {e}") from e
    window = doc.get("window")
    d_max = doc.get("d_max")
    meta = ChronnetMeta(
        h=doc.get("h", 1),
        d_max=math.inf if d_max is None else float(d_max),
        tau=doc.get("tau"),
        keep_fraction=doc.get("keep_fraction"),
        window=tuple(window) if window is not None else None,
    )
    try:
        return Chronnet(directed=directed, nodes=tuple(nodes), weights=weights, grid=grid, meta=meta)
    except ConstructionError as e:
        raise NetworkFormatError(f"{path}: {e}") from e
