"""Infection-record CSV parsing, state exclusion and the cumulative vertex timeline."""

import csv
from datetime import date, timedelta
from pathlib import Path
from typing import BinaryIO, Iterable, Optional

import pandas as pd
from pydantic import ValidationError

from src.models import GeoPoint, InfectionRecord, VertexTimeline
from src.utils.errors import (
    DuplicateRegionError,
    InputValidationError,
    RecordParseError,
    StorageError,
)
from src.utils.logger import get_logger

logger = get_logger()

RECORD_COLUMNS: tuple[str, ...] = (
    "region_id",
    "state",
    "latitude",
    "longitude",
    "first_report_date",
)

# Model field path -> CSV column, for error messages.
_FIELD_COLUMNS = {
    ("region_id",): "region_id",
    ("state",): "state",
    ("lat",): "latitude",
    ("lon",): "longitude",
    ("first_report",): "first_report_date",
}


def _data_lines(text: str) -> tuple[list[str], list[int]]:
    """Non-blank, non-comment lines and their 1-based physical line numbers."""
    lines, numbers = [], []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            lines.append(line)
            numbers.append(number)
    return lines, numbers


def _column_for(loc: tuple) -> str:
    if not loc:
        return "?"
    return _FIELD_COLUMNS.get((str(loc[-1]),), str(loc[-1]))


def _split_row(line: str, row: int) -> list[str]:
    """Fields of one physical line; the count must match the header."""
    try:
        fields = next(csv.reader([line], skipinitialspace=True, strict=True))
    except csv.Error as e:
        raise RecordParseError(row, "row", f"malformed CSV: {e}") from None
    if len(fields) > len(RECORD_COLUMNS):
        raise RecordParseError(
            row,
            f"field {len(RECORD_COLUMNS) + 1}",
            f"expected {len(RECORD_COLUMNS)} fields, got {len(fields)}",
        )
    if len(fields) < len(RECORD_COLUMNS):
        raise RecordParseError(row, RECORD_COLUMNS[len(fields)], "missing value")
    return fields


def _parse_row(values: dict[str, object], row: int) -> InfectionRecord:
    for column in RECORD_COLUMNS:
        value = values.get(column)
        if not isinstance(value, str) or not value.strip():
            raise RecordParseError(row, column, "missing value")

    fields = {column: str(values[column]).strip() for column in RECORD_COLUMNS}
    try:
        first_report = date.fromisoformat(fields["first_report_date"])
    except ValueError:
        raise RecordParseError(
            row, "first_report_date", f"'{fields['first_report_date']}' is not YYYY-MM-DD"
        ) from None

    try:
        location = GeoPoint(lat=fields["latitude"], lon=fields["longitude"])
        return InfectionRecord(
            region_id=fields["region_id"],
            state=fields["state"],
            location=location,
            first_report=first_report,
            row=row,
        )
    except ValidationError as e:
        error = e.errors()[0]
        raise RecordParseError(row, _column_for(error["loc"]), error["msg"]) from None


def parse_records(source: BinaryIO) -> list[InfectionRecord]:
    """Parse a UTF-8 infection-record CSV.

    The header must be exactly ``region_id,state,latitude,longitude,first_report_date``.
    Blank lines and lines starting with ``#`` are ignored. Row numbers in errors are
    physical line numbers.

    Raises:
        InputValidationError: On a bad encoding or header.
        RecordParseError: On a malformed row.
        DuplicateRegionError: If a region_id appears twice.
    """
    try:
        text = source.read().decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise InputValidationError(f"input is not valid UTF-8: {e}") from e

    lines, numbers = _data_lines(text)
    if not lines:
        raise InputValidationError("input has no header line")

    header = [name.strip() for name in lines[0].split(",")]
    if tuple(header) != RECORD_COLUMNS:
        raise InputValidationError(
            f"header must be '{','.join(RECORD_COLUMNS)}', got '{lines[0].strip()}'"
        )

    frame = pd.DataFrame(
        [_split_row(line, row) for line, row in zip(lines[1:], numbers[1:])],
        columns=list(RECORD_COLUMNS),
        dtype=object,
    )

    records: list[InfectionRecord] = []
    seen: dict[str, int] = {}
    for position, values in enumerate(frame.to_dict(orient="records")):
        row = numbers[position + 1]
        record = _parse_row(values, row)
        if record.region_id in seen:
            raise DuplicateRegionError(record.region_id, seen[record.region_id], row)
        seen[record.region_id] = row
        records.append(record)

    logger.debug(f"parsed {len(records)} infection records")
    return records


def load_records(path: Path) -> list[InfectionRecord]:
    """Parse the infection-record CSV at ``path``."""
    try:
        with open(path, "rb") as f:
            return parse_records(f)
    except OSError as e:
        raise StorageError(f"cannot read records from {path}: {e}") from e


def _state_key(state: str) -> str:
    return state.strip().casefold()


def load_exclusion_list(path: Path) -> set[str]:
    """State names from a file with one name per line; blanks and ``#`` lines skipped."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise StorageError(f"cannot read exclusion list {path}: {e}") from e
    lines, _ = _data_lines(text)
    return {line.strip() for line in lines}


def apply_exclusion(
    records: Iterable[InfectionRecord], excluded_states: Iterable[str]
) -> list[InfectionRecord]:
    """Drop records whose state is excluded, keeping the order of the rest.

    State names match case-insensitively, ignoring surrounding whitespace.
    """
    excluded = {_state_key(state): state for state in excluded_states}
    records = list(records)
    kept = [record for record in records if _state_key(record.state) not in excluded]

    present = {_state_key(record.state) for record in records}
    for key, state in sorted(excluded.items()):
        if key not in present:
            logger.warning(f"excluded state '{state}' matches no record")

    if len(kept) != len(records):
        logger.info(f"excluded {len(records) - len(kept)} of {len(records)} records")
    return kept


def build_timeline(
    records: Iterable[InfectionRecord], start: date, end: date
) -> VertexTimeline:
    """Cumulative vertex sets for every day from ``start`` to ``end`` inclusive.

    Records reported before ``start`` are present from the first day; records reported
    after ``end`` are dropped. Within a day, vertices are ordered by (first_report,
    region_id), so each day's list extends the previous one.
    """
    if start > end:
        raise InputValidationError(f"start {start} is after end {end}")

    ordered = sorted(records, key=lambda r: (r.first_report, r.region_id))
    included = [r for r in ordered if r.first_report <= end]
    dropped = len(ordered) - len(included)
    if dropped:
        logger.warning(f"dropped {dropped} records reported after {end}")

    dates = [start + timedelta(days=k) for k in range((end - start).days + 1)]
    cumulative: list[list[str]] = []
    cursor = 0
    for day in dates:
        while cursor < len(included) and included[cursor].first_report <= day:
            cursor += 1
        cumulative.append([r.region_id for r in included[:cursor]])

    return VertexTimeline(
        dates=dates,
        cumulative_vertices=cumulative,
        records={r.region_id: r for r in included},
    )


def load_timeline(
    path: Path,
    start: date,
    end: date,
    exclusion_path: Optional[Path] = None,
) -> VertexTimeline:
    """Read, filter and bucket the records of one input file."""
    records = load_records(path)
    if exclusion_path is not None:
        records = apply_exclusion(records, load_exclusion_list(exclusion_path))
    return build_timeline(records, start, end)
