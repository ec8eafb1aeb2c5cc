"""Growth curves of the cumulative infected-region count.

Two models are fit against day indices x (1 on the origin date):

* cubic: a3*x^3 + a2*x^2 + a1*x + a0, by linear least squares;
* tanh:  alpha * tanh(beta * (x - c)) + gamma, by Levenberg-Marquardt.

The tanh model saturates at alpha + gamma (for beta > 0).
"""

from datetime import date, timedelta
from typing import Optional, Sequence

import numpy as np

from src.models import FitResult, GrowthSeries, MetricsRow, ProjectionRow
from src.utils.errors import (
    FitConvergenceError,
    IllConditionedFitError,
    InputValidationError,
    InsufficientDataError,
)
from src.utils.logger import get_logger

logger = get_logger()

CUBIC_MIN_POINTS = 4
TANH_MIN_POINTS = 5
MAX_CONDITION = 1e12
DEFAULT_MAX_ITER = 500

RSS_RTOL = 1e-10
GRAD_TOL = 1e-8
STEP_RTOL = 1e-10
# Below this, |beta| * max|x - c| leaves tanh indistinguishable from a straight line
# and further steps only trade alpha against beta.
LINEAR_LIMIT = 0.05
INITIAL_DAMPING = 1e-3
MAX_DAMPING = 1e16
DIAG_FLOOR = 1e-12


def cubic_design(x: Sequence[float]) -> np.ndarray:
    """Design matrix with columns x^3, x^2, x, 1."""
    return np.vander(np.asarray(x, dtype=float), CUBIC_MIN_POINTS)


def fit_cubic(series: GrowthSeries) -> FitResult:
    """Least-squares cubic through the series.

    Raises:
        InsufficientDataError: With fewer than 4 points.
        IllConditionedFitError: If the design condition number exceeds 1e12.
    """
    if len(series) < CUBIC_MIN_POINTS:
        raise InsufficientDataError(
            f"cubic fit needs >= {CUBIC_MIN_POINTS} points, got {len(series)}",
            minimum=CUBIC_MIN_POINTS,
        )

    design = cubic_design(series.x)
    y = np.asarray(series.y, dtype=float)
    condition = float(np.linalg.cond(design))
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise IllConditionedFitError(f"cubic design condition number {condition:.3e} > 1e12")

    # Solve on unit-norm columns, then undo the scaling.
    scale = np.linalg.norm(design, axis=0)
    solution, *_ = np.linalg.lstsq(design / scale, y, rcond=None)
    params = solution / scale
    residual = y - design @ params
    rss = float(residual @ residual)

    logger.debug(f"cubic fit on {len(series)} points: params={params.tolist()}, rss={rss:.6g}")
    return FitResult(
        model="cubic",
        params=params.tolist(),
        rss=rss,
        converged=True,
        iterations=1,
        origin_date=series.origin_date,
    )


def tanh_model(params: Sequence[float], x: Sequence[float]) -> np.ndarray:
    """alpha * tanh(beta * (x - c)) + gamma."""
    alpha, beta, c, gamma = params
    return alpha * np.tanh(beta * (np.asarray(x, dtype=float) - c)) + gamma


def tanh_jacobian(params: Sequence[float], x: Sequence[float]) -> np.ndarray:
    """Partial derivatives of the tanh model, columns ordered alpha, beta, c, gamma."""
    alpha, beta, c, _ = params
    shifted = np.asarray(x, dtype=float) - c
    t = np.tanh(beta * shifted)
    sech2 = 1.0 - t * t
    return np.column_stack(
        (t, alpha * sech2 * shifted, -alpha * beta * sech2, np.ones_like(t))
    )


def initial_tanh_params(series: GrowthSeries) -> list[float]:
    """Starting point for the tanh fit from the shape of the data.

    gamma from the mean, alpha from half the range, c where y first reaches the mean and
    beta from the steepest first difference.
    """
    x = np.asarray(series.x, dtype=float)
    y = np.asarray(series.y, dtype=float)
    mean = float(y.mean())
    spread = float(y.max() - y.min())

    crossing = int(np.argmax(y >= mean))
    slopes = np.diff(y) / np.diff(x)
    max_slope = float(np.abs(slopes).max()) if slopes.size else 0.0
    beta = 4.0 * max_slope / spread if spread > 0 else 1.0
    return [spread / 2.0, beta if beta > 0 else 1.0, float(x[crossing]), mean]


class LevenbergMarquardt:
    """Levenberg-Marquardt for the tanh growth model.

    Damping uses Marquardt's diagonal scaling and Nielsen's update of the damping
    factor from the gain ratio. A step is accepted only when it lowers the rss.
    """

    def __init__(self, x: np.ndarray, y: np.ndarray, max_iter: int = DEFAULT_MAX_ITER):
        self.x = x
        self.y = y
        self.max_iter = max_iter
        self.damping = INITIAL_DAMPING
        self.nu = 2.0

    def residual(self, params: np.ndarray) -> np.ndarray:
        return self.y - tanh_model(params, self.x)

    def solve_step(self, normal: np.ndarray, gradient: np.ndarray) -> Optional[np.ndarray]:
        """Damped normal-equation step, None if the system is singular."""
        diag = np.maximum(np.diag(normal), DIAG_FLOOR)
        try:
            return np.linalg.solve(normal + self.damping * np.diag(diag), gradient)
        except np.linalg.LinAlgError:
            return None

    def gain_ratio(
        self, step: np.ndarray, normal: np.ndarray, gradient: np.ndarray, actual: float
    ) -> float:
        """Actual over predicted rss reduction."""
        diag = np.maximum(np.diag(normal), DIAG_FLOOR)
        predicted = float(step @ (gradient + self.damping * diag * step))
        return actual / predicted if predicted > 0 else -1.0

    def straight_line(self, params: np.ndarray) -> bool:
        """Whether tanh is in its linear limit over the data (beta -> 0, alpha * beta fixed)."""
        _, beta, c, _ = params
        return abs(beta) * float(np.abs(self.x - c).max()) < LINEAR_LIMIT

    def update_damping(self, ratio: float) -> None:
        if ratio > 0:
            self.damping *= max(1.0 / 3.0, 1.0 - (2.0 * ratio - 1.0) ** 3)
            self.nu = 2.0
        else:
            self.damping *= self.nu
            self.nu *= 2.0

    def run(self, start: Sequence[float]) -> tuple[np.ndarray, float, bool, int, list[float]]:
        """Minimize the rss from ``start``.

        Returns:
            Parameters, rss, converged flag, iterations and the rss history (the
            starting rss followed by every accepted step).
        """
        params = np.asarray(start, dtype=float)
        r = self.residual(params)
        rss = float(r @ r)
        history = [rss]

        for iteration in range(1, self.max_iter + 1):
            if rss == 0.0:
                return params, rss, True, iteration - 1, history

            jac = tanh_jacobian(params, self.x)
            normal = jac.T @ jac
            gradient = jac.T @ r
            if np.linalg.norm(gradient) < GRAD_TOL:
                return params, rss, True, iteration - 1, history

            step = self.solve_step(normal, gradient)
            if step is None or not np.all(np.isfinite(step)):
                self.update_damping(-1.0)
            else:
                candidate = params + step
                r_new = self.residual(candidate)
                rss_new = float(r_new @ r_new)
                ratio = self.gain_ratio(step, normal, gradient, rss - rss_new)
                if np.isfinite(rss_new) and rss_new < rss:
                    improvement = (rss - rss_new) / rss
                    params, r, rss = candidate, r_new, rss_new
                    history.append(rss)
                    self.update_damping(max(ratio, 1e-12))
                    logger.debug(f"LM iteration {iteration}: rss={rss:.12g}")
                    if improvement < RSS_RTOL:
                        return params, rss, True, iteration, history
                    if np.linalg.norm(step) <= STEP_RTOL * (np.linalg.norm(params) + STEP_RTOL):
                        return params, rss, True, iteration, history
                    if self.straight_line(params):
                        logger.debug("tanh fit degenerated to a straight line")
                        return params, rss, True, iteration, history
                else:
                    self.update_damping(-1.0)

            if self.damping > MAX_DAMPING:
                # No descent direction left at this precision.
                return params, rss, True, iteration, history

        return params, rss, False, self.max_iter, history


def fit_tanh(
    series: GrowthSeries,
    init: Optional[Sequence[float]] = None,
    max_iter: int = DEFAULT_MAX_ITER,
) -> FitResult:
    """Fit alpha * tanh(beta * (x - c)) + gamma, canonicalized to beta > 0.

    Args:
        series: Data to fit.
        init: Starting (alpha, beta, c, gamma); derived from the data when None.
        max_iter: Iteration cap.

    Raises:
        InsufficientDataError: With fewer than 5 points.
        InputValidationError: If every y is equal.
        FitConvergenceError: If the cap is hit; carries the best parameters so far.
    """
    if len(series) < TANH_MIN_POINTS:
        raise InsufficientDataError(
            f"tanh fit needs >= {TANH_MIN_POINTS} points, got {len(series)}",
            minimum=TANH_MIN_POINTS,
        )
    y = np.asarray(series.y, dtype=float)
    if np.all(y == y[0]):
        raise InputValidationError("tanh fit is degenerate when every y is equal")
    if init is not None and len(init) != 4:
        raise InputValidationError(f"tanh init needs 4 parameters, got {len(init)}")

    start = list(init) if init is not None else initial_tanh_params(series)
    solver = LevenbergMarquardt(np.asarray(series.x, dtype=float), y, max_iter=max_iter)
    params, rss, converged, iterations, history = solver.run(start)

    alpha, beta, c, gamma = params.tolist()
    if beta < 0:
        alpha, beta = -alpha, -beta

    result = FitResult(
        model="tanh",
        params=[alpha, beta, c, gamma],
        rss=rss,
        converged=converged,
        iterations=iterations,
        origin_date=series.origin_date,
        rss_history=history,
    )
    if not converged:
        raise FitConvergenceError(
            f"tanh fit did not converge in {max_iter} iterations",
            params=result.params,
            rss=rss,
            iterations=iterations,
            best=result,
        )

    logger.debug(f"tanh fit converged after {iterations} iterations, rss={rss:.6g}")
    return result


def extrapolate(fit: FitResult, x_values: Sequence[float]) -> list[float]:
    """Evaluate the fitted model at each x, without clamping."""
    if fit.model == "tanh" and not fit.converged:
        raise InputValidationError("cannot extrapolate an unconverged tanh fit")
    x = np.asarray(x_values, dtype=float)
    if fit.model == "cubic":
        return np.polyval(fit.params, x).tolist()
    return tanh_model(fit.params, x).tolist()


def saturation_level(fit: FitResult) -> float:
    """Limit of a tanh fit as x grows, alpha + gamma."""
    if fit.model != "tanh":
        raise InputValidationError(f"{fit.model} fits have no saturation level")
    alpha, _, _, gamma = fit.params
    return alpha + gamma


def day_index(day: date, origin: date) -> int:
    """1-based day index of ``day`` counted from ``origin``."""
    return (day - origin).days + 1


def series_from_rows(
    rows: Sequence[MetricsRow],
    origin: Optional[date] = None,
    before: Optional[date] = None,
) -> GrowthSeries:
    """Growth series (day index, n) from metrics rows.

    Args:
        rows: Metrics rows in date order.
        origin: Date with x = 1; the first row's date when None.
        before: Keep only rows strictly before this date.
    """
    kept = [row for row in rows if before is None or row.date < before]
    if origin is None:
        origin = rows[0].date if rows else None
    return GrowthSeries(
        x=[float(day_index(row.date, origin)) for row in kept],
        y=[float(row.n) for row in kept],
        origin_date=origin,
    )


def project(fit: FitResult, through: date) -> list[ProjectionRow]:
    """Model value on every day from the fit's origin through ``through``.

    Raises:
        InputValidationError: If the fit has no origin or ``through`` precedes it.
    """
    if fit.origin_date is None:
        raise InputValidationError("fit has no origin_date to project from")
    last = day_index(through, fit.origin_date)
    if last < 1:
        raise InputValidationError(f"through-date {through} is before origin {fit.origin_date}")

    xs = list(range(1, last + 1))
    values = extrapolate(fit, xs)
    return [
        ProjectionRow(date=fit.origin_date + timedelta(days=x - 1), x=x, value=value)
        for x, value in zip(xs, values)
    ]
