"""Tests for run-output readers and writers."""

import json
from datetime import date

import pytest

from src.models import (
    METRICS_COLUMNS,
    CommunityRecord,
    FitResult,
    GapRow,
    MetricsRow,
    PhaseSummary,
    ProjectionRow,
)
from src.pipeline.storage import (
    read_communities,
    read_fit,
    read_metrics,
    read_projection,
    write_communities,
    write_fit,
    write_metrics,
    write_projection,
    write_summary,
)
from src.utils.errors import StorageError


def metrics_row(day, n, connected=True):
    return MetricsRow(
        date=day,
        n=n,
        new_vertices=1,
        d_km=123.456789012345,
        max_degree=2,
        avg_degree=4.0 / 3.0,
        avg_clustering=1.0 / 3.0,
        triangles=1,
        diameter=2 if connected else None,
        avg_path_length=1.2345678901 if connected else None,
        spectral_radius=2.4811943040920177,
        algebraic_connectivity=0.585786437626905 if connected else 0.0,
        modularity=0.1234567891 if connected else None,
        communities=2,
        largest_community=2,
        components=1 if connected else 2,
    )


class TestMetricsFile:
    """Tests for write_metrics and read_metrics."""

    def test_round_trip(self, tmp_path):
        """Test that rows survive with 9 significant digits."""
        rows = [metrics_row(date(2020, 3, 1), 3), metrics_row(date(2020, 3, 2), 4, False)]
        path = tmp_path / "metrics.csv"
        write_metrics(rows, path)
        back = read_metrics(path)

        assert [r.date for r in back] == [date(2020, 3, 1), date(2020, 3, 2)]
        assert back[0].d_km == pytest.approx(rows[0].d_km, rel=1e-8)
        assert back[0].spectral_radius == pytest.approx(rows[0].spectral_radius, rel=1e-8)
        assert back[0].diameter == 2
        assert back[1].diameter is None
        assert back[1].avg_path_length is None
        assert back[1].modularity is None
        assert back[1].algebraic_connectivity == 0.0
        assert back[1].components == 2

    def test_layout(self, tmp_path):
        """Test the header comment, column order and empty fields."""
        path = tmp_path / "metrics.csv"
        write_metrics([metrics_row(date(2020, 3, 1), 4, False)], path)
        lines = path.read_text(encoding="utf-8").splitlines()

        assert lines[0].startswith("#")
        header = next(line for line in lines if not line.startswith("#"))
        assert header.split(",") == list(METRICS_COLUMNS)
        data = lines[-1].split(",")
        assert data[METRICS_COLUMNS.index("diameter")] == ""
        assert data[METRICS_COLUMNS.index("modularity")] == ""
        assert data[METRICS_COLUMNS.index("d_km")] == "123.456789"

    def test_sorted_by_date(self, tmp_path):
        """Test that rows are written in date order."""
        path = tmp_path / "metrics.csv"
        write_metrics([metrics_row(date(2020, 3, 2), 3), metrics_row(date(2020, 3, 1), 3)], path)
        assert [r.date.day for r in read_metrics(path)] == [1, 2]

    def test_missing_file(self, tmp_path):
        """Test that a missing file is a storage error."""
        with pytest.raises(StorageError):
            read_metrics(tmp_path / "absent.csv")

    def test_missing_column(self, tmp_path):
        """Test that a file lacking a column is rejected."""
        path = tmp_path / "metrics.csv"
        path.write_text("date,n\n2020-03-01,3\n", encoding="utf-8")
        with pytest.raises(StorageError, match="lacks columns"):
            read_metrics(path)


class TestJsonFiles:
    """Tests for the communities, fit and summary documents."""

    def test_communities_round_trip(self, tmp_path):
        """Test that communities keep their region identifiers."""
        records = [
            CommunityRecord(date=date(2020, 3, 1), communities=[["a", "b"], ["c"]], modularity=0.1),
            CommunityRecord(date=date(2020, 3, 2), communities=[["a"]], modularity=None),
        ]
        path = tmp_path / "communities.json"
        write_communities(records, path)
        assert read_communities(path) == records

    def test_fit_keys(self, tmp_path):
        """Test the fit document's keys and that the rss history is left out."""
        fit = FitResult(
            model="tanh",
            params=[100.0, 0.2, 20.0, 5.0],
            rss=1.5,
            iterations=12,
            origin_date=date(2020, 3, 1),
            rss_history=[10.0, 1.5],
        )
        path = tmp_path / "fit.json"
        write_fit(fit, path)

        payload = json.loads(path.read_text(encoding="utf-8"))
        assert set(payload) == {"model", "params", "rss", "converged", "iterations", "origin_date"}
        assert payload["origin_date"] == "2020-03-01"
        back = read_fit(path)
        assert back.params == fit.params
        assert back.rss_history == []

    def test_malformed_fit(self, tmp_path):
        """Test that an invalid document is a storage error."""
        path = tmp_path / "fit.json"
        path.write_text('{"model": "spline"}', encoding="utf-8")
        with pytest.raises(StorageError):
            read_fit(path)

    def test_not_json(self, tmp_path):
        """Test that non-JSON content is a storage error."""
        path = tmp_path / "fit.json"
        path.write_text("not json", encoding="utf-8")
        with pytest.raises(StorageError):
            read_fit(path)

    def test_summary_with_gap(self, tmp_path):
        """Test that the counterfactual block reports the last day."""
        phase = PhaseSummary(
            phase="pre_lockdown",
            start=date(2020, 3, 1),
            end=date(2020, 3, 2),
            days=2,
            mean_new_vertices=1.5,
        )
        gap = [
            GapRow(date=date(2020, 3, 1), x=1, observed=3, model=3.5, gap=0.5),
            GapRow(date=date(2020, 3, 2), x=2, observed=4, model=6.0, gap=2.0),
        ]
        path = tmp_path / "summary.json"
        write_summary([phase], path, gap=gap)

        payload = json.loads(path.read_text(encoding="utf-8"))
        assert payload["phases"][0]["phase"] == "pre_lockdown"
        assert payload["counterfactual"]["final"]["gap"] == 2.0
        assert len(payload["counterfactual"]["days"]) == 2

    def test_summary_without_gap(self, tmp_path):
        """Test that no counterfactual block is written without a fit."""
        path = tmp_path / "summary.json"
        write_summary([], path)
        assert json.loads(path.read_text(encoding="utf-8")) == {"phases": []}


class TestProjectionFile:
    """Tests for write_projection and read_projection."""

    def test_round_trip(self, tmp_path):
        """Test date, x and value columns."""
        rows = [
            ProjectionRow(date=date(2020, 3, 1), x=1, value=1.25),
            ProjectionRow(date=date(2020, 3, 2), x=2, value=2.5),
        ]
        path = tmp_path / "projection.csv"
        write_projection(rows, path)
        assert path.read_text(encoding="utf-8").splitlines()[0] == "date,x,value"
        assert read_projection(path) == rows
