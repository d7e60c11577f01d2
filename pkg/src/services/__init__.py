"""Services: experiment pipeline and figure reproductions."""
from src.services.pipeline import (
    CommunityConfig,
    GridConfig,
    OutlierConfig,
    PipelineError,
    PipelineRunner,
    PruneConfig,
    RunConfig,
    SourceConfig,
    run,
)
from src.services.repro import FIGURES, ReproRunner, repro

__all__ = [
    "FIGURES",
    "CommunityConfig",
    "GridConfig",
    "OutlierConfig",
    "PipelineError",
    "PipelineRunner",
    "PruneConfig",
    "ReproRunner",
    "RunConfig",
    "SourceConfig",
    "repro",
    "run",
]
