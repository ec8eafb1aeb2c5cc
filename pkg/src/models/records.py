"""Infection record and vertex timeline models."""

import math
from datetime import date

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class GeoPoint(BaseModel):
    """A latitude/longitude pair in decimal degrees."""

    model_config = ConfigDict(frozen=True)

    lat: float = Field(..., ge=-90.0, le=90.0, description="Latitude in degrees")
    lon: float = Field(..., description="Longitude in degrees, normalized into (-180, 180]")

    @field_validator("lat", "lon")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("must be a finite number")
        return value

    @field_validator("lon")
    @classmethod
    def _normalize_lon(cls, value: float) -> float:
        if -180.0 < value <= 180.0:
            return value
        wrapped = math.fmod(value + 180.0, 360.0)
        if wrapped <= 0.0:
            wrapped += 360.0
        return wrapped - 180.0


class InfectionRecord(BaseModel):
    """One region's identity, location and first-report date."""

    model_config = ConfigDict(frozen=True)

    region_id: str = Field(..., min_length=1, description="Unique region identifier")
    state: str = Field(..., description="State or province the region belongs to")
    location: GeoPoint
    first_report: date = Field(..., description="Date of the first reported infection")
    row: int = Field(default=0, description="Source line number, 0 when not from a file")


class VertexTimeline(BaseModel):
    """Cumulative daily vertex sets V(t) over a contiguous window."""

    model_config = ConfigDict(frozen=True)

    dates: list[date] = Field(default_factory=list, description="Contiguous daily dates")
    cumulative_vertices: list[list[str]] = Field(
        default_factory=list,
        description="For each date, region_ids with first_report on or before it",
    )
    records: dict[str, InfectionRecord] = Field(
        default_factory=dict, description="Records of every region in the timeline"
    )

    @model_validator(mode="after")
    def _check_shape(self) -> "VertexTimeline":
        if len(self.dates) != len(self.cumulative_vertices):
            raise ValueError("dates and cumulative_vertices differ in length")
        for earlier, later in zip(self.cumulative_vertices, self.cumulative_vertices[1:]):
            if not set(earlier) <= set(later):
                raise ValueError("cumulative vertex sets must be monotone")
        return self

    @property
    def sizes(self) -> list[int]:
        """|V(t)| for every date."""
        return [len(vertices) for vertices in self.cumulative_vertices]

    def new_vertices(self, index: int) -> int:
        """Number of regions first appearing on day ``index``."""
        previous = len(self.cumulative_vertices[index - 1]) if index > 0 else 0
        return len(self.cumulative_vertices[index]) - previous

    def points(self, region_ids: list[str]) -> list[GeoPoint]:
        """Locations of the given regions, in order."""
        return [self.records[region_id].location for region_id in region_ids]
