"""Tests for errors, run logging and stage timing."""

import pickle

import pytest

from src.utils.errors import (
    DuplicateRegionError,
    FitConvergenceError,
    InputValidationError,
    InsufficientDataError,
    NumericalError,
    RecordParseError,
    SpectralConvergenceError,
    StorageError,
)
from src.utils.logger import RunLogger
from src.utils.timing import StageTimer, StageTimings


class TestErrors:
    """Tests for the error hierarchy."""

    @pytest.mark.parametrize(
        "error, code",
        [
            (RecordParseError(3, "latitude", "out of range"), 2),
            (InsufficientDataError("need more points", 4), 2),
            (SpectralConvergenceError("no convergence", 1.0, 1e-3, 10), 3),
            (StorageError("disk full"), 4),
        ],
    )
    def test_exit_codes(self, error, code):
        """Test the exit status carried by each error family."""
        assert error.exit_code == code

    def test_families(self):
        """Test that concrete errors derive from their family."""
        assert isinstance(DuplicateRegionError("a", 2, 5), InputValidationError)
        assert isinstance(SpectralConvergenceError("x", 0.0, 1.0, 1), NumericalError)

    def test_pickle_keeps_attributes(self):
        """Test that errors survive a process boundary with their fields."""
        error = RecordParseError(7, "longitude", "not a number")
        restored = pickle.loads(pickle.dumps(error))
        assert type(restored) is RecordParseError
        assert str(restored) == str(error)
        assert (restored.row, restored.field) == (7, "longitude")

    def test_pickle_fit_error(self):
        """Test that fit errors keep their best parameters."""
        error = FitConvergenceError("stalled", [1.0, 0.1, 5.0, 0.0], 2.5, 500)
        restored = pickle.loads(pickle.dumps(error))
        assert restored.params == [1.0, 0.1, 5.0, 0.0]
        assert restored.exit_code == 3


class TestRunLogger:
    """Tests for RunLogger."""

    def test_events_recorded(self):
        """Test that events keep their order and metadata."""
        run_logger = RunLogger("abc123")
        run_logger.log_day("2020-03-01", 5, 120.5, 6)
        run_logger.log_fallback("2020-03-01", "spectral_radius", "no convergence")

        events = run_logger.get_events()
        assert [e["event_type"] for e in events] == ["day_processed", "solver_fallback"]
        assert events[0]["metadata"]["edges"] == 6
        assert all(e["run_id"] == "abc123" for e in events)

    def test_get_events_is_a_copy(self):
        """Test that callers cannot mutate the event list."""
        run_logger = RunLogger("r")
        run_logger.log_event("run_started")
        run_logger.get_events().clear()
        assert len(run_logger.get_events()) == 1


class TestStageTimer:
    """Tests for StageTimer and StageTimings."""

    def test_accumulates(self):
        """Test that repeated stages add up."""
        timings = StageTimings()
        with StageTimer(timings, "metrics"):
            pass
        with StageTimer(timings, "metrics"):
            pass
        timings.record("spectral", 0.5)
        assert set(timings.to_dict()) == {"metrics", "spectral"}
        assert timings.total >= 0.5

    def test_records_on_error(self):
        """Test that a failing stage is still timed."""
        timings = StageTimings()
        with pytest.raises(ValueError):
            with StageTimer(timings, "ingest"):
                raise ValueError("boom")
        assert "ingest" in timings.stage_timings
