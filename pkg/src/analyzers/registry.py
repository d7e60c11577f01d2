"""Analyzer registry: named report sections runnable against one chronnet."""
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional

from src.analyzers.base import AnalysisReport, ReportAnalyzer
from src.analyzers.network import (
    CentralityAnalyzer,
    DegreeAnalyzer,
    DensityAnalyzer,
    FitAnalyzer,
    PathAnalyzer,
    StrengthAnalyzer,
    TransitivityAnalyzer,
)
from src.network import Chronnet

logger = logging.getLogger(__name__)

AnalyzerFactory = Callable[..., ReportAnalyzer]


@dataclass
class AnalyzerInfo:
    """Information about a registered analyzer."""

    name: str
    factory: AnalyzerFactory
    description: str = ""


class AnalyzerRegistry:
    """Registry for report analyzers.

    Example:
        >>> registry = AnalyzerRegistry()
        >>> registry.list_all()
        ['density', 'degree', 'strength', 'fits', 'paths', 'weighted-paths', 'transitivity', 'centrality']
        >>> results = registry.run_all(chronnet)
    """

    def __init__(self, auto_register: bool = True):
        self._analyzers: Dict[str, AnalyzerInfo] = {}
        if auto_register:
            self._register_builtin()

    def _register_builtin(self) -> None:
        self.register("density", DensityAnalyzer, "Node/link counts, edge density and average degree")
        self.register("degree", DegreeAnalyzer, "Degree distribution and shape")
        self.register("strength", StrengthAnalyzer, "Strength distribution and shape")
        self.register("fits", FitAnalyzer, "Power-law and log-normal fits of degree and strength")
        self.register("paths", PathAnalyzer, "Average shortest path and diameter in hops")
        self.register(
            "weighted-paths",
            lambda c, **kw: PathAnalyzer(c, weighted=True, **kw),
            "Average shortest path and diameter with 1/w link lengths",
        )
        self.register("transitivity", TransitivityAnalyzer, "Global clustering coefficient")
        self.register("centrality", CentralityAnalyzer, "Top nodes by degree, betweenness and closeness")

    def register(self, name: str, factory: AnalyzerFactory, description: str = "") -> None:
        self._analyzers[name] = AnalyzerInfo(name=name, factory=factory, description=description)
        logger.debug(f"Registered analyzer: {name}")

    def get(self, name: str) -> Optional[AnalyzerInfo]:
        return self._analyzers.get(name)

    def list_all(self) -> List[str]:
        return list(self._analyzers.keys())

    def run(self, name: str, chronnet: Chronnet, **kwargs) -> AnalysisReport:
        """Run one analyzer.

        Raises:
            ValueError: If the analyzer is not registered.
        """
        info = self.get(name)
        if not info:
            raise ValueError(f"Analyzer '{name}' not found. Available: {self.list_all()}")
        return info.factory(chronnet, **kwargs).analyze()

    def run_all(
        self,
        chronnet: Chronnet,
        names: Optional[Iterable[str]] = None,
        stop_on_error: bool = False,
        options: Optional[Dict[str, dict]] = None,
    ) -> Dict[str, Any]:
        """Run the selected analyzers (all by default).

        Returns:
            Mapping from analyzer name to {"status": "success", "data": section}
            or {"status": "error", "error": message}.
        """
        selected = list(names) if names is not None else self.list_all()
        options = options or {}
        results: Dict[str, Any] = {}
        for name in selected:
            try:
                report = self.run(name, chronnet, **options.get(name, {}))
                results[name] = {"status": "success", "data": report.to_dict()}
            except Exception as e:
                results[name] = {"status": "error", "error": str(e)}
                logger.error(f"Error running analyzer '{name}': {e}")
                if stop_on_error:
                    break
        return results


# Global registry instance
_registry: Optional[AnalyzerRegistry] = None


def get_registry() -> AnalyzerRegistry:
    """Get the global analyzer registry, creating it on first use."""
    global _registry
    if _registry is None:
        _registry = AnalyzerRegistry()
    return _registry
