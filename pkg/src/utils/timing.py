"""Wall-clock timing of pipeline stages."""

import time
from dataclasses import dataclass, field
from typing import Optional


@dataclass
class StageTimings:
    """Accumulated wall-clock seconds per pipeline stage."""

    stage_timings: dict[str, float] = field(default_factory=dict)

    def record(self, stage: str, duration: float) -> None:
        """Record timing for a stage.

        Args:
            stage: Stage name.
            duration: Duration in seconds.
        """
        self.stage_timings[stage] = self.stage_timings.get(stage, 0.0) + duration

    @property
    def total(self) -> float:
        """Total recorded seconds."""
        return sum(self.stage_timings.values())

    def to_dict(self) -> dict[str, float]:
        """Convert to dictionary for serialization."""
        return {stage: round(seconds, 6) for stage, seconds in self.stage_timings.items()}


class StageTimer:
    """Context manager for timing stages."""

    def __init__(self, timings: StageTimings, stage: str):
        """Initialize timer.

        Args:
            timings: Timings object to record into.
            stage: Stage name.
        """
        self.timings = timings
        self.stage = stage
        self.start_time: Optional[float] = None

    def __enter__(self) -> "StageTimer":
        """Start timing."""
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        """Record timing."""
        if self.start_time is not None:
            self.timings.record(self.stage, time.perf_counter() - self.start_time)
