"""Infection-record ingestion and synthetic data."""

from src.data.ingest import (
    RECORD_COLUMNS,
    apply_exclusion,
    build_timeline,
    load_exclusion_list,
    load_records,
    load_timeline,
    parse_records,
)
from src.data.synth import BoundingBox, synth_frame, write_records_csv

__all__ = [
    "RECORD_COLUMNS",
    "BoundingBox",
    "apply_exclusion",
    "build_timeline",
    "load_exclusion_list",
    "load_records",
    "load_timeline",
    "parse_records",
    "synth_frame",
    "write_records_csv",
]
