"""Loader registry mapping format names to event loaders."""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Type

from src.events.filters import FilterSpec
from src.events.loaders import BaseLoader, GenericCsvLoader, Mcd14mlLoader
from src.events.models import EventDataError, EventSet

logger = logging.getLogger(__name__)


@dataclass
class LoaderInfo:
    """Information about a registered loader."""

    name: str
    loader_class: Type[BaseLoader]
    description: str = ""


class LoaderRegistry:
    """Registry for event file formats.

    Example:
        >>> registry = LoaderRegistry()
        >>> registry.list_all()
        ['generic-csv', 'mcd14ml-csv']
        >>> es = registry.load('generic-csv', Path('events.csv'))
    """

    def __init__(self, auto_register: bool = True):
        self._loaders: Dict[str, LoaderInfo] = {}
        if auto_register:
            self.register(GenericCsvLoader, description="Generic events CSV (t,x,y + attribute columns)")
            self.register(Mcd14mlLoader, description="MODIS MCD14ML active-fire locations CSV")

    def register(self, loader_class: Type[BaseLoader], name: Optional[str] = None, description: str = "") -> None:
        """Register a loader class under its format name."""
        if name is None:
            name = loader_class().name
        self._loaders[name] = LoaderInfo(name=name, loader_class=loader_class, description=description)
        logger.debug(f"Registered loader: {name}")

    def get(self, name: str) -> Optional[LoaderInfo]:
        return self._loaders.get(name)

    def list_all(self) -> List[str]:
        return list(self._loaders.keys())

    def load(self, name: str, path: Path, filters: Optional[FilterSpec] = None) -> EventSet:
        """Load a file with the named loader.

        Raises:
            EventDataError: If the format is unknown or the file is invalid.
        """
        info = self.get(name)
        if not info:
            raise EventDataError(f"Unknown event format '{name}'. Available: {self.list_all()}")
        return info.loader_class().load(path, filters)


# Global registry instance
_registry: Optional[LoaderRegistry] = None


def get_registry() -> LoaderRegistry:
    """Get the global loader registry, creating it on first use."""
    global _registry
    if _registry is None:
        _registry = LoaderRegistry()
    return _registry
