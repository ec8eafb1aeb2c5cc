"""Per-snapshot metric, community and growth-fit result models."""

from datetime import date
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Column order of metrics.csv; `components` trails the fixed columns.
METRICS_COLUMNS: tuple[str, ...] = (
    "date",
    "n",
    "new_vertices",
    "d_km",
    "max_degree",
    "avg_degree",
    "avg_clustering",
    "triangles",
    "diameter",
    "avg_path_length",
    "spectral_radius",
    "algebraic_connectivity",
    "modularity",
    "communities",
    "largest_community",
    "components",
)


class MetricsRow(BaseModel):
    """All scalar metrics of one daily snapshot."""

    date: date
    n: int = Field(..., ge=0)
    new_vertices: int = Field(..., ge=0)
    d_km: float = Field(..., ge=0.0, description="Connectivity parameter d(t) in km")
    max_degree: int = Field(..., ge=0)
    avg_degree: float = Field(..., ge=0.0)
    avg_clustering: float = Field(..., ge=0.0, le=1.0)
    triangles: int = Field(..., ge=0)
    diameter: Optional[int] = Field(default=None, description="Empty when disconnected")
    avg_path_length: Optional[float] = Field(default=None, description="Empty when disconnected")
    spectral_radius: float = Field(..., ge=0.0)
    algebraic_connectivity: Optional[float] = Field(default=None, description="Empty when n = 1")
    modularity: Optional[float] = Field(default=None, description="Empty when there are no edges")
    communities: int = Field(..., ge=0)
    largest_community: int = Field(..., ge=0)
    components: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _check_degrees(self) -> "MetricsRow":
        if self.n and self.max_degree > self.n - 1:
            raise ValueError("max_degree exceeds n - 1")
        if self.avg_degree > self.max_degree + 1e-12:
            raise ValueError("avg_degree exceeds max_degree")
        return self

    @property
    def connected(self) -> bool:
        """Whether the snapshot was a single component."""
        return self.components <= 1


class Partition(BaseModel):
    """Community assignment with dense labels 0..k-1."""

    model_config = ConfigDict(frozen=True)

    assignment: list[int] = Field(..., description="Community label of each vertex")

    @model_validator(mode="after")
    def _check_labels(self) -> "Partition":
        if self.assignment and set(self.assignment) != set(range(max(self.assignment) + 1)):
            raise ValueError("community labels must form a contiguous range 0..k-1")
        return self

    @property
    def k(self) -> int:
        """Number of communities."""
        return max(self.assignment) + 1 if self.assignment else 0

    def members(self) -> list[list[int]]:
        """Vertex indices of each community, by label."""
        groups: list[list[int]] = [[] for _ in range(self.k)]
        for vertex, label in enumerate(self.assignment):
            groups[label].append(vertex)
        return groups


class CommunityStats(BaseModel):
    """Modularity and size statistics of a partition."""

    modularity: Optional[float] = Field(default=None, ge=-0.5, le=1.0)
    community_count: int = Field(..., ge=0)
    largest_size: int = Field(..., ge=0)
    size_distribution: list[int] = Field(
        default_factory=list, description="Community sizes, ascending"
    )


class CommunityRecord(BaseModel):
    """One day's entry in the communities JSON document."""

    date: date
    communities: list[list[str]] = Field(default_factory=list)
    modularity: Optional[float] = None


class GrowthSeries(BaseModel):
    """Cumulative region counts against 1-based day indices."""

    x: list[float] = Field(..., description="Day indices, strictly increasing")
    y: list[float] = Field(..., description="Cumulative region counts")
    origin_date: Optional[date] = Field(default=None, description="Date with x = 1")

    @model_validator(mode="after")
    def _check_series(self) -> "GrowthSeries":
        if len(self.x) != len(self.y):
            raise ValueError("x and y differ in length")
        if any(b <= a for a, b in zip(self.x, self.x[1:])):
            raise ValueError("x must be strictly increasing")
        return self

    def __len__(self) -> int:
        return len(self.x)


class FitResult(BaseModel):
    """A fitted growth model."""

    model: Literal["cubic", "tanh"]
    params: list[float] = Field(
        ..., description="cubic: a3, a2, a1, a0; tanh: alpha, beta, c, gamma"
    )
    rss: float = Field(..., ge=0.0, description="Residual sum of squares")
    converged: bool = True
    iterations: int = Field(default=0, ge=0)
    origin_date: Optional[date] = Field(default=None, description="Date with x = 1")
    rss_history: list[float] = Field(
        default_factory=list,
        exclude=True,
        description="Starting rss, then rss after each accepted step",
    )


class PhaseSummary(BaseModel):
    """Aggregate behaviour of the metrics within one lockdown phase."""

    phase: Literal["pre_lockdown", "early_lockdown", "late_lockdown"]
    start: date
    end: date
    days: int
    mean_new_vertices: float
    means: dict[str, float] = Field(default_factory=dict)
    slopes: dict[str, float] = Field(
        default_factory=dict, description="Least-squares slope per day of each metric"
    )


class ProjectionRow(BaseModel):
    """Model value of a fit on one calendar day."""

    date: date
    x: int = Field(..., description="1-based day index from the fit's origin")
    value: float


class GapRow(BaseModel):
    """Observed count against a fitted curve on one day."""

    date: date
    x: int
    observed: float
    model: float
    gap: float = Field(..., description="model - observed")
