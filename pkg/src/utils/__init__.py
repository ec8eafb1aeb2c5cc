"""Utility modules for spreadnet."""

from src.utils.config import Settings, get_settings
from src.utils.errors import (
    ConfigError,
    DisconnectedGraphError,
    DuplicateRegionError,
    EmptyGraphError,
    FitConvergenceError,
    IllConditionedFitError,
    InputValidationError,
    InsufficientDataError,
    InternalConsistencyError,
    NumericalError,
    RecordParseError,
    SpectralConvergenceError,
    SpreadnetError,
    StorageError,
    ThresholdError,
)
from src.utils.logger import RunLogger, get_logger, setup_logging
from src.utils.timing import StageTimer, StageTimings

__all__ = [
    # Config
    "Settings",
    "get_settings",
    # Logging
    "RunLogger",
    "get_logger",
    "setup_logging",
    # Errors
    "ConfigError",
    "DisconnectedGraphError",
    "DuplicateRegionError",
    "EmptyGraphError",
    "FitConvergenceError",
    "IllConditionedFitError",
    "InputValidationError",
    "InsufficientDataError",
    "InternalConsistencyError",
    "NumericalError",
    "RecordParseError",
    "SpectralConvergenceError",
    "SpreadnetError",
    "StorageError",
    "ThresholdError",
    # Timing
    "StageTimer",
    "StageTimings",
]
