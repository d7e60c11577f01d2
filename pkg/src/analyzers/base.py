"""Base report analyzer and report section model."""
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field
from typing import List, Optional

from src.network import Chronnet


@dataclass
class AnalysisReport:
    """Structured report section from a ReportAnalyzer."""
    section_name: str
    rating: Optional[str] = None
    summary: str = ""
    details: List[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


class ReportAnalyzer(ABC):
    """Base class for analyzers that turn one chronnet measure into a report section."""

    def __init__(self, chronnet: Chronnet):
        self.chronnet = chronnet

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def analyze(self) -> AnalysisReport:
        """Run the measure and return a structured report section."""
        pass
