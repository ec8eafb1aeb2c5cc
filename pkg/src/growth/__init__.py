"""Growth-curve fitting and lockdown phase analysis."""

from src.growth.fit import (
    LevenbergMarquardt,
    extrapolate,
    fit_cubic,
    fit_tanh,
    project,
    saturation_level,
    series_from_rows,
    tanh_jacobian,
    tanh_model,
)
from src.growth.phases import counterfactual_gap, phase_summary

__all__ = [
    "LevenbergMarquardt",
    "counterfactual_gap",
    "extrapolate",
    "fit_cubic",
    "fit_tanh",
    "phase_summary",
    "project",
    "saturation_level",
    "series_from_rows",
    "tanh_jacobian",
    "tanh_model",
]
