"""Pydantic models for spreadnet."""

from src.models.records import GeoPoint, InfectionRecord, VertexTimeline
from src.models.results import (
    METRICS_COLUMNS,
    CommunityRecord,
    CommunityStats,
    FitResult,
    GapRow,
    GrowthSeries,
    MetricsRow,
    Partition,
    PhaseSummary,
    ProjectionRow,
)
from src.models.run import RunConfig

__all__ = [
    "METRICS_COLUMNS",
    "CommunityRecord",
    "CommunityStats",
    "FitResult",
    "GapRow",
    "GeoPoint",
    "GrowthSeries",
    "InfectionRecord",
    "MetricsRow",
    "Partition",
    "PhaseSummary",
    "ProjectionRow",
    "RunConfig",
    "VertexTimeline",
]
