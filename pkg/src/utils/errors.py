"""Exception hierarchy for spreadnet.

Every error raised on purpose by the library derives from ``SpreadnetError`` and
carries the process exit status the CLI reports for it.
"""

from typing import Any, Optional


def _restore(cls: type, message: str, state: dict) -> "SpreadnetError":
    error = cls.__new__(cls)
    Exception.__init__(error, message)
    error.__dict__.update(state)
    return error


class SpreadnetError(Exception):
    """Base class for all spreadnet errors."""

    exit_code: int = 1

    def __reduce__(self):
        # Subclasses take structured arguments, so rebuild from message and attributes
        # when crossing a process boundary.
        return (_restore, (type(self), str(self), self.__dict__))


class InputValidationError(SpreadnetError):
    """Input data or arguments violate a precondition."""

    exit_code = 2


class NumericalError(SpreadnetError):
    """A numerical routine failed to converge or lost consistency."""

    exit_code = 3


class StorageError(SpreadnetError):
    """Reading or writing a file failed."""

    exit_code = 4


class ConfigError(InputValidationError):
    """Invalid run configuration."""

    pass


class RecordParseError(InputValidationError):
    """A row of an infection-record file is malformed."""

    def __init__(self, row: int, field: str, message: str):
        super().__init__(f"row {row}: field '{field}': {message}")
        self.row = row
        self.field = field


class DuplicateRegionError(InputValidationError):
    """The same region_id appears on two rows."""

    def __init__(self, region_id: str, first_row: int, second_row: int):
        super().__init__(
            f"duplicate region_id '{region_id}' on rows {first_row} and {second_row}"
        )
        self.region_id = region_id
        self.first_row = first_row
        self.second_row = second_row


class ThresholdError(InputValidationError):
    """A fixed connectivity threshold is invalid."""

    pass


class InsufficientDataError(InputValidationError):
    """Too few points for the requested computation."""

    def __init__(self, message: str, minimum: int):
        super().__init__(message)
        self.minimum = minimum


class DisconnectedGraphError(InputValidationError):
    """A path metric was requested on a disconnected snapshot."""

    pass


class EmptyGraphError(InputValidationError):
    """An edge-dependent quantity was requested on a snapshot with no edges."""

    pass


class SpectralConvergenceError(NumericalError):
    """An eigenvalue iteration hit its cap before meeting the tolerance."""

    def __init__(self, message: str, estimate: float, residual: float, iterations: int):
        super().__init__(
            f"{message} (estimate={estimate:.12g}, residual={residual:.3e}, "
            f"iterations={iterations})"
        )
        self.estimate = estimate
        self.residual = residual
        self.iterations = iterations


class FitConvergenceError(NumericalError):
    """A nonlinear fit did not converge within its iteration cap."""

    def __init__(
        self,
        message: str,
        params: list[float],
        rss: float,
        iterations: int,
        best: Optional[Any] = None,
    ):
        super().__init__(f"{message} (rss={rss:.6g}, iterations={iterations})")
        self.params = params
        self.rss = rss
        self.iterations = iterations
        self.best = best


class IllConditionedFitError(NumericalError):
    """The least-squares design matrix is too ill-conditioned to trust."""

    pass


class InternalConsistencyError(NumericalError):
    """Two independent computations of the same quantity disagree."""

    pass
