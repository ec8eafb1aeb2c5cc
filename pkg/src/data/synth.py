"""Seeded synthetic infection records for self-testing the pipeline."""

from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path

import numpy as np
import pandas as pd

from src.data.ingest import RECORD_COLUMNS
from src.utils.config import Settings
from src.utils.errors import InputValidationError, StorageError
from src.utils.logger import get_logger

logger = get_logger()

STATE_BANDS = 8


@dataclass(frozen=True)
class BoundingBox:
    """Latitude/longitude rectangle in degrees."""

    lat_min: float
    lat_max: float
    lon_min: float
    lon_max: float

    def __post_init__(self) -> None:
        if not -90.0 <= self.lat_min < self.lat_max <= 90.0:
            raise InputValidationError(
                f"latitude range [{self.lat_min}, {self.lat_max}] is empty or out of bounds"
            )
        if not self.lon_min < self.lon_max:
            raise InputValidationError(
                f"longitude range [{self.lon_min}, {self.lon_max}] is empty"
            )

    @classmethod
    def from_settings(cls, settings: Settings) -> "BoundingBox":
        return cls(
            lat_min=settings.synth_lat_min,
            lat_max=settings.synth_lat_max,
            lon_min=settings.synth_lon_min,
            lon_max=settings.synth_lon_max,
        )


def synth_frame(n: int, start: date, end: date, seed: int, bbox: BoundingBox) -> pd.DataFrame:
    """``n`` records in the ingest CSV layout.

    Coordinates are uniform in ``bbox``. First-report days are logistic around the middle
    of the window and clipped into it, so cumulative counts follow an S-curve. States are
    latitude bands. Rows are sorted by (first_report_date, region_id).
    """
    if n < 1:
        raise InputValidationError(f"synthetic dataset needs n >= 1, got {n}")
    if start > end:
        raise InputValidationError(f"start {start} is after end {end}")

    rng = np.random.default_rng(seed)
    lats = rng.uniform(bbox.lat_min, bbox.lat_max, size=n)
    lons = rng.uniform(bbox.lon_min, bbox.lon_max, size=n)

    span = (end - start).days
    offsets = rng.logistic(loc=span / 2.0, scale=max(span, 1) / 8.0, size=n)
    offsets = np.clip(np.rint(offsets), 0, span).astype(int)

    bands = np.floor((lats - bbox.lat_min) / (bbox.lat_max - bbox.lat_min) * STATE_BANDS)
    bands = np.clip(bands, 0, STATE_BANDS - 1).astype(int)

    width = len(str(n))
    frame = pd.DataFrame(
        {
            "region_id": [f"R{i:0{width}d}" for i in range(1, n + 1)],
            "state": [f"Band {b + 1}" for b in bands],
            "latitude": np.round(lats, 6),
            "longitude": np.round(lons, 6),
            "first_report_date": [
                (start + timedelta(days=int(k))).isoformat() for k in offsets
            ],
        },
        columns=list(RECORD_COLUMNS),
    )
    return frame.sort_values(["first_report_date", "region_id"], kind="stable").reset_index(
        drop=True
    )


def write_records_csv(frame: pd.DataFrame, path: Path) -> None:
    """Write records with fixed 6-decimal coordinates and ``\\n`` line endings."""
    try:
        frame.to_csv(path, index=False, float_format="%.6f", lineterminator="\n")
    except OSError as e:
        raise StorageError(f"cannot write records to {path}: {e}") from e
    logger.info(f"wrote {len(frame)} synthetic records to {path}")
