"""Configuration management using pydantic-settings."""

from datetime import date
from functools import lru_cache
from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="SPREADNET_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Analysis window (day 1 of the growth series is analysis_start)
    analysis_start: date = date(2020, 3, 1)
    analysis_end: date = date(2020, 4, 17)
    lockdown_date: date = date(2020, 3, 25)
    lockdown_lag_days: int = Field(default=14, ge=0)

    # Community detection
    louvain_seed: int = 42
    louvain_restarts: int = Field(default=1, ge=1)

    # Eigensolvers
    eigen_tol: float = Field(default=1e-9, gt=0)
    eigen_max_iter: int = Field(default=10_000, ge=1)
    eigensolver: Literal["power", "dense"] = "power"
    fiedler_solver: Literal["power", "dense"] = "dense"
    eigensolver_fallback: bool = True

    # Metrics
    cc_exclude_low_degree: bool = False

    # Execution
    jobs: int = Field(default=1, ge=1)

    # Growth fitting
    fit_max_iter: int = Field(default=500, ge=1)

    # Synthetic data bounding box (degrees)
    synth_lat_min: float = 8.0
    synth_lat_max: float = 33.0
    synth_lon_min: float = 68.0
    synth_lon_max: float = 92.0


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
