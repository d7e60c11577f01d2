"""Analyzers package."""
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
from src.analyzers.registry import AnalyzerRegistry, get_registry

__all__ = [
    "AnalysisReport",
    "AnalyzerRegistry",
    "CentralityAnalyzer",
    "DegreeAnalyzer",
    "DensityAnalyzer",
    "FitAnalyzer",
    "PathAnalyzer",
    "ReportAnalyzer",
    "StrengthAnalyzer",
    "TransitivityAnalyzer",
    "get_registry",
]
