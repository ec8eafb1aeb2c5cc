"""Metric behaviour before and after a lockdown date."""

from datetime import date, timedelta
from typing import Sequence

import numpy as np

from src.growth.fit import day_index, extrapolate
from src.models import METRICS_COLUMNS, FitResult, GapRow, MetricsRow, PhaseSummary
from src.utils.errors import InputValidationError

# Every metrics column except the date.
NUMERIC_COLUMNS: tuple[str, ...] = tuple(c for c in METRICS_COLUMNS if c != "date")


def phase_of(day: date, lockdown: date, lag_days: int) -> str:
    """pre_lockdown before ``lockdown``, early_lockdown for ``lag_days`` days, then late."""
    if day < lockdown:
        return "pre_lockdown"
    if day < lockdown + timedelta(days=lag_days):
        return "early_lockdown"
    return "late_lockdown"


def _summarize(phase: str, rows: list[MetricsRow]) -> PhaseSummary:
    means: dict[str, float] = {}
    slopes: dict[str, float] = {}
    origin = rows[0].date
    for column in NUMERIC_COLUMNS:
        points = [
            (day_index(row.date, origin), float(value))
            for row in rows
            if (value := getattr(row, column)) is not None
        ]
        if not points:
            continue
        xs, ys = np.array(points).T
        means[column] = float(ys.mean())
        if len(points) >= 2:
            slopes[column] = float(np.polyfit(xs, ys, 1)[0])

    return PhaseSummary(
        phase=phase,
        start=rows[0].date,
        end=rows[-1].date,
        days=len(rows),
        mean_new_vertices=means.get("new_vertices", 0.0),
        means=means,
        slopes=slopes,
    )


def phase_summary(
    rows: Sequence[MetricsRow], lockdown: date, lag_days: int = 14
) -> list[PhaseSummary]:
    """Mean and per-day least-squares slope of every metric within each phase.

    Phases without rows are omitted. Slopes need at least two rows with a value.
    """
    if lag_days < 0:
        raise InputValidationError(f"lockdown lag must be non-negative, got {lag_days}")

    grouped: dict[str, list[MetricsRow]] = {}
    for row in sorted(rows, key=lambda r: r.date):
        grouped.setdefault(phase_of(row.date, lockdown, lag_days), []).append(row)

    order = ("pre_lockdown", "early_lockdown", "late_lockdown")
    return [_summarize(phase, grouped[phase]) for phase in order if phase in grouped]


def counterfactual_gap(fit: FitResult, rows: Sequence[MetricsRow]) -> list[GapRow]:
    """Fitted value against the observed region count on every observed day."""
    if fit.origin_date is None:
        raise InputValidationError("fit has no origin_date to align with observations")

    xs = [day_index(row.date, fit.origin_date) for row in rows]
    values = extrapolate(fit, xs)
    return [
        GapRow(date=row.date, x=x, observed=float(row.n), model=value, gap=value - row.n)
        for row, x, value in zip(rows, xs, values)
    ]
