"""Event file loaders.

Each loader turns one file format into an EventSet in file order. Loaders are
registered by format name in src.events.registry.
"""
import logging
import re
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from src.config import get_settings
from src.events.filters import FilterSpec
from src.events.models import EventDataError, EventSet

logger = logging.getLogger(__name__)

_INT_PATTERN = re.compile(r"^[+-]?\d+$")


def _read_table(path: Path, sep: str = ",") -> pd.DataFrame:
    """Read a delimited file as strings, mapping parser failures to EventDataError."""
    try:
        return pd.read_csv(path, sep=sep, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError as e:
        raise EventDataError(f"{path}: file is empty (no header)") from e
    except pd.errors.ParserError as e:
        raise EventDataError(f"{path}: malformed row: {e}") from e
    except UnicodeDecodeError as e:
        raise EventDataError(f"{path}: not valid UTF-8: {e}") from e


def _numeric_column(df: pd.DataFrame, column: str, path: Path) -> np.ndarray:
    """Parse a string column as float, naming the first bad line (header is line 1)."""
    raw = df[column].fillna("").astype(str).str.strip()
    values = pd.to_numeric(raw, errors="coerce")
    bad = values.isna() | (raw == "")
    if bad.any():
        index = int(np.flatnonzero(bad.to_numpy())[0])
        raise EventDataError(
            f"{path}, line {index + 2}: column {column!r} is not numeric: {raw.iloc[index]!r}"
        )
    # to_numeric can differ from float() in the last ulp.
    return np.array([float(s) for s in raw], dtype=np.float64)


def _attr_columns(df: pd.DataFrame, columns: List[str]) -> Dict[str, np.ndarray]:
    attrs = {}
    for column in columns:
        values = df[column].fillna("").astype(str).to_numpy(dtype=object)
        values[values == ""] = None
        attrs[column] = values
    return attrs


class BaseLoader(ABC):
    """Abstract base class for event file loaders."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Format name used on the command line."""
        pass

    @abstractmethod
    def load(self, path: Path, filters: Optional[FilterSpec] = None) -> EventSet:
        """Parse a file into an EventSet in file order."""
        pass


class GenericCsvLoader(BaseLoader):
    """Canonical interchange schema: header t,x,y followed by attribute columns.

    Timestamps are integer ticks when every value is an integer literal and
    real-valued otherwise. Empty attribute cells mean "attribute absent".
    """

    REQUIRED = ("t", "x", "y")

    @property
    def name(self) -> str:
        return "generic-csv"

    def load(self, path: Path, filters: Optional[FilterSpec] = None) -> EventSet:
        df = _read_table(path)
        missing = [c for c in self.REQUIRED if c not in df.columns]
        if missing:
            raise EventDataError(f"{path}: missing required column(s) {missing}; header must start with t,x,y")
        if len(set(df.columns)) != len(df.columns):
            raise EventDataError(f"{path}: duplicate column names in header")

        raw_t = df["t"].fillna("").astype(str).str.strip()
        t_float = _numeric_column(df, "t", path)
        if len(df) and raw_t.map(lambda s: bool(_INT_PATTERN.match(s))).all():
            t = raw_t.astype(np.int64).to_numpy()
        elif len(df):
            t = t_float
        else:
            t = np.array([], dtype=np.int64)

        x = _numeric_column(df, "x", path)
        y = _numeric_column(df, "y", path)
        for name, column in (("t", t_float), ("x", x), ("y", y)):
            if column.size and not np.all(np.isfinite(column)):
                index = int(np.flatnonzero(~np.isfinite(column))[0])
                raise EventDataError(f"{path}, line {index + 2}: column {name!r} is not finite")

        extra = [c for c in df.columns if c not in self.REQUIRED]
        es = EventSet(t, x, y, _attr_columns(df, extra))
        logger.info("Loaded %d events from %s", len(es), path)
        return es


class Mcd14mlLoader(BaseLoader):
    """MODIS Collection 6 active-fire locations (MCD14ML).

    Both the archive header (latitude, longitude, acq_date, acq_time,
    confidence, type) and the compact header (lat, lon, YYYYMMDD, HHMM, conf,
    type) are accepted. Longitude becomes x and latitude y. Timestamps are
    integer days since 1970-01-01, or minutes since the epoch when the filter
    granularity is "minute". Rows with confidence not strictly above the
    threshold are dropped; the fire "type" is carried in attrs and kept.
    """

    ALIASES = {
        "latitude": ("latitude", "lat"),
        "longitude": ("longitude", "lon"),
        "acq_date": ("acq_date", "YYYYMMDD"),
        "acq_time": ("acq_time", "HHMM"),
        "confidence": ("confidence", "conf"),
    }

    @property
    def name(self) -> str:
        return "mcd14ml-csv"

    def _resolve(self, df: pd.DataFrame, path: Path) -> Dict[str, str]:
        resolved = {}
        for field_name, candidates in self.ALIASES.items():
            found = next((c for c in candidates if c in df.columns), None)
            if found is None:
                raise EventDataError(f"{path}: missing MCD14ML column {field_name!r} (or {candidates[1]!r})")
            resolved[field_name] = found
        return resolved

    def _ticks(self, df: pd.DataFrame, columns: Dict[str, str], path: Path, granularity: str) -> np.ndarray:
        raw_date = df[columns["acq_date"]].astype(str).str.strip().str.replace("-", "", regex=False)
        dates = pd.to_datetime(raw_date, format="%Y%m%d", errors="coerce")
        if dates.isna().any():
            index = int(np.flatnonzero(dates.isna().to_numpy())[0])
            raise EventDataError(f"{path}, line {index + 2}: bad acquisition date {raw_date.iloc[index]!r}")
        days = ((dates - pd.Timestamp("1970-01-01")) // pd.Timedelta(days=1)).to_numpy(dtype=np.int64)
        if granularity == "day":
            return days

        raw_time = df[columns["acq_time"]].astype(str).str.strip()
        hhmm = pd.to_numeric(raw_time, errors="coerce")
        bad = hhmm.isna() | (hhmm < 0) | (hhmm % 100 >= 60) | (hhmm >= 2400)
        if bad.any():
            index = int(np.flatnonzero(bad.to_numpy())[0])
            raise EventDataError(f"{path}, line {index + 2}: bad acquisition time {raw_time.iloc[index]!r}")
        hhmm = hhmm.to_numpy(dtype=np.int64)
        return days * 1440 + (hhmm // 100) * 60 + hhmm % 100

    def load(self, path: Path, filters: Optional[FilterSpec] = None) -> EventSet:
        filters = filters or FilterSpec()
        threshold = filters.min_confidence
        if threshold is None:
            threshold = get_settings().min_confidence

        with open(path, encoding="utf-8") as fh:
            header = fh.readline()
        df = _read_table(path, sep="," if "," in header else r"\s+")
        columns = self._resolve(df, path)

        # Malformed rows are errors even when the confidence filter would drop them.
        confidence = _numeric_column(df, columns["confidence"], path)
        x = _numeric_column(df, columns["longitude"], path)
        y = _numeric_column(df, columns["latitude"], path)
        t = self._ticks(df, columns, path, filters.granularity) if len(df) else np.array([], dtype=np.int64)

        attrs = {"confidence": df[columns["confidence"]].astype(str).str.strip().to_numpy(dtype=object)}
        if "type" in df.columns:
            attrs.update(_attr_columns(df, ["type"]))

        keep = confidence > threshold
        dropped = int((~keep).sum())
        if dropped:
            logger.info("Dropped %d of %d fire records with confidence <= %s", dropped, len(df), threshold)
        es = EventSet(t, x, y, attrs).take(np.flatnonzero(keep))
        logger.info("Loaded %d fire events from %s", len(es), path)
        return es
