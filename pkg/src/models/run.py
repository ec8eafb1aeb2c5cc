"""Run configuration for the analysis pipeline."""

from datetime import date
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from src.utils.config import Settings


class RunConfig(BaseModel):
    """Every choice that shapes one `analyze` run."""

    input_path: Path = Field(..., description="Infection-record CSV")
    exclusion_path: Optional[Path] = Field(default=None, description="One state name per line")
    start: date
    end: date
    lockdown: Optional[date] = None
    metrics_path: Path = Field(default=Path("metrics.csv"))
    communities_path: Path = Field(default=Path("communities.json"))
    cc_exclude_low_degree: bool = False
    louvain_seed: int = 42
    louvain_restarts: int = Field(default=1, ge=1)
    eigen_tol: float = Field(default=1e-9, gt=0.0)
    eigen_max_iter: int = Field(default=10_000, ge=1)
    eigensolver: Literal["power", "dense"] = "power"
    fiedler_solver: Literal["power", "dense"] = "dense"
    eigensolver_fallback: bool = True
    threshold_km: Optional[float] = Field(
        default=None, ge=0.0, description="Fixed threshold (what-if mode); None derives d(t)"
    )
    jobs: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_window(self) -> "RunConfig":
        if self.start > self.end:
            raise ValueError(f"start {self.start} is after end {self.end}")
        if self.lockdown is not None and not self.start <= self.lockdown <= self.end:
            raise ValueError(
                f"lockdown {self.lockdown} outside the window {self.start}..{self.end}"
            )
        return self

    @classmethod
    def from_settings(cls, settings: Settings, **overrides) -> "RunConfig":
        """Build a config from settings defaults, then apply non-None overrides."""
        values = {
            "start": settings.analysis_start,
            "end": settings.analysis_end,
            "lockdown": settings.lockdown_date,
            "cc_exclude_low_degree": settings.cc_exclude_low_degree,
            "louvain_seed": settings.louvain_seed,
            "louvain_restarts": settings.louvain_restarts,
            "eigen_tol": settings.eigen_tol,
            "eigen_max_iter": settings.eigen_max_iter,
            "eigensolver": settings.eigensolver,
            "fiedler_solver": settings.fiedler_solver,
            "eigensolver_fallback": settings.eigensolver_fallback,
            "jobs": settings.jobs,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        # A default lockdown outside an explicitly chosen window is dropped, not an error.
        if overrides.get("lockdown") is None and not (
            values["start"] <= values["lockdown"] <= values["end"]
        ):
            values["lockdown"] = None
        return cls(**values)
