"""Readers and writers for run outputs: metrics CSV, communities, fits, projections."""

import json
from pathlib import Path
from typing import Any, Optional, Sequence

import pandas as pd
from pydantic import ValidationError

from src.models import (
    METRICS_COLUMNS,
    CommunityRecord,
    FitResult,
    GapRow,
    MetricsRow,
    PhaseSummary,
    ProjectionRow,
)
from src.utils.errors import StorageError
from src.utils.logger import get_logger

logger = get_logger()

REAL_FORMAT = "%.9g"

METRICS_HEADER = """\
# spreadnet daily network metrics
# reals carry 9 significant digits; an empty field means the value is undefined
# n = 1: d_km, degrees, clustering, triangles, diameter, avg_path_length and
#   spectral_radius are 0; algebraic_connectivity and modularity are empty;
#   one community of size 1
# no edges (n >= 2): modularity is empty and every vertex is its own community
# components > 1: diameter and avg_path_length are empty, algebraic_connectivity is 0
"""


def _ensure_parent(path: Path) -> None:
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise StorageError(f"cannot create directory for {path}: {e}") from e


def _write_json(path: Path, payload: Any) -> None:
    _ensure_parent(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(payload, f, indent=2)
            f.write("\n")
    except OSError as e:
        raise StorageError(f"cannot write {path}: {e}") from e


def _read_json(path: Path) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise StorageError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise StorageError(f"{path} is not valid JSON: {e}") from e


def metrics_frame(rows: Sequence[MetricsRow]) -> pd.DataFrame:
    """Metrics rows as a frame with the fixed column order."""
    records = [row.model_dump(mode="json") for row in rows]
    return pd.DataFrame.from_records(records, columns=list(METRICS_COLUMNS))


def write_metrics(rows: Sequence[MetricsRow], path: Path) -> None:
    """Write metrics.csv: header comment, then one row per day in date order."""
    frame = metrics_frame(sorted(rows, key=lambda row: row.date))
    _ensure_parent(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(METRICS_HEADER)
            frame.to_csv(f, index=False, float_format=REAL_FORMAT, na_rep="", lineterminator="\n")
    except OSError as e:
        raise StorageError(f"cannot write metrics to {path}: {e}") from e
    logger.info(f"wrote {len(frame)} metric rows to {path}")


def read_metrics(path: Path) -> list[MetricsRow]:
    """Read a metrics.csv written by ``write_metrics``.

    Raises:
        StorageError: If the file is unreadable, lacks a column or holds an invalid row.
    """
    try:
        frame = pd.read_csv(path, comment="#", dtype={"date": str})
    except OSError as e:
        raise StorageError(f"cannot read metrics from {path}: {e}") from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise StorageError(f"malformed metrics file {path}: {e}") from e

    missing = [column for column in METRICS_COLUMNS if column not in frame.columns]
    if missing:
        raise StorageError(f"metrics file {path} lacks columns: {', '.join(missing)}")

    frame = frame.astype(object).where(frame.notna(), None)
    rows = []
    for position, values in enumerate(frame.to_dict(orient="records")):
        try:
            rows.append(MetricsRow.model_validate(values))
        except ValidationError as e:
            raise StorageError(f"metrics file {path}, data row {position + 1}: {e}") from e
    return rows


def write_communities(records: Sequence[CommunityRecord], path: Path) -> None:
    """Write the communities document: [{date, communities, modularity}, ...]."""
    _write_json(path, [record.model_dump(mode="json") for record in records])
    logger.info(f"wrote communities for {len(records)} days to {path}")


def read_communities(path: Path) -> list[CommunityRecord]:
    payload = _read_json(path)
    try:
        return [CommunityRecord.model_validate(item) for item in payload]
    except (ValidationError, TypeError) as e:
        raise StorageError(f"malformed communities file {path}: {e}") from e


def write_fit(fit: FitResult, path: Path) -> None:
    """Write {model, params, rss, converged, iterations, origin_date}."""
    _write_json(path, fit.model_dump(mode="json"))
    logger.info(f"wrote {fit.model} fit to {path}")


def read_fit(path: Path) -> FitResult:
    payload = _read_json(path)
    try:
        return FitResult.model_validate(payload)
    except ValidationError as e:
        raise StorageError(f"malformed fit file {path}: {e}") from e


def write_projection(rows: Sequence[ProjectionRow], path: Path) -> None:
    """Write date,x,value rows."""
    frame = pd.DataFrame.from_records(
        [row.model_dump(mode="json") for row in rows], columns=["date", "x", "value"]
    )
    _ensure_parent(path)
    try:
        frame.to_csv(path, index=False, float_format=REAL_FORMAT, lineterminator="\n")
    except OSError as e:
        raise StorageError(f"cannot write projection to {path}: {e}") from e
    logger.info(f"wrote {len(frame)} projected days to {path}")


def read_projection(path: Path) -> list[ProjectionRow]:
    try:
        frame = pd.read_csv(path, dtype={"date": str})
    except OSError as e:
        raise StorageError(f"cannot read projection from {path}: {e}") from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise StorageError(f"malformed projection file {path}: {e}") from e
    return [ProjectionRow.model_validate(values) for values in frame.to_dict(orient="records")]


def write_summary(
    phases: Sequence[PhaseSummary],
    path: Path,
    gap: Optional[Sequence[GapRow]] = None,
) -> None:
    """Write the phase summary, plus the counterfactual gap when a fit was given."""
    payload: dict[str, Any] = {"phases": [phase.model_dump(mode="json") for phase in phases]}
    if gap:
        payload["counterfactual"] = {
            "final": gap[-1].model_dump(mode="json"),
            "days": [row.model_dump(mode="json") for row in gap],
        }
    _write_json(path, payload)
    logger.info(f"wrote summary of {len(phases)} phases to {path}")
