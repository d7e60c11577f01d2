"""Artifact writers."""
from src.output.tables import (
    dendrogram_frame,
    distribution_frame,
    node_frame,
    partition_frame,
    read_json,
    read_partition,
    series_frame,
    to_jsonable,
    write_frame,
    write_json,
)

__all__ = [
    "dendrogram_frame",
    "distribution_frame",
    "node_frame",
    "partition_frame",
    "read_json",
    "read_partition",
    "series_frame",
    "to_jsonable",
    "write_frame",
    "write_json",
]
