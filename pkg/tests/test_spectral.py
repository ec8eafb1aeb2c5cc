"""Tests for spectral radius and algebraic connectivity."""

import math

import numpy as np
import pytest

from src.models import GeoPoint
from src.network.build import (
    Snapshot,
    build_snapshot,
    distance_matrix,
    laplacian,
    snapshot_from_edges,
)
from src.network.metrics import degree_stats
from src.network.spectral import (
    algebraic_connectivity,
    dominant_eigenpair,
    fiedler_eigenpair,
    spectral_radius,
    spectral_summary,
)
from src.utils.errors import (
    InputValidationError,
    InternalConsistencyError,
    SpectralConvergenceError,
)
from tests.graph_fixtures import complete, disjoint_triangles, path, random_graphs, star


def oracle(snapshot):
    """Largest adjacency eigenvalue and second-smallest Laplacian eigenvalue."""
    rho = float(np.abs(np.linalg.eigvalsh(snapshot.adjacency.astype(float))).max())
    lam = float(np.linalg.eigvalsh(laplacian(snapshot).entries.astype(float))[1])
    return rho, lam


class TestSpectralRadius:
    """Tests for spectral_radius."""

    @pytest.mark.parametrize("method", ["power", "dense"])
    def test_complete_graph(self, method):
        """Test rho(K_n) = n - 1."""
        assert spectral_radius(complete(6), method=method) == pytest.approx(5.0, abs=1e-8)

    @pytest.mark.parametrize("method", ["power", "dense"])
    def test_star(self, method):
        """Test rho of a star is the square root of its leaf count."""
        assert spectral_radius(star(9), method=method) == pytest.approx(3.0, abs=1e-8)
        assert spectral_radius(star(4), method=method) == pytest.approx(2.0, abs=1e-8)

    def test_bipartite_path(self):
        """Test that a bipartite graph still converges."""
        expected = 2 * math.cos(math.pi / 7)
        assert spectral_radius(path(6)) == pytest.approx(expected, abs=1e-8)

    def test_edgeless(self):
        """Test that an edgeless snapshot has radius 0."""
        assert spectral_radius(snapshot_from_edges(3, [])) == 0.0

    def test_iteration_cap(self):
        """Test that hitting the cap reports the estimate and residual."""
        with pytest.raises(SpectralConvergenceError) as info:
            dominant_eigenpair(path(8), max_iter=2)
        assert info.value.iterations == 2
        assert info.value.residual > 1e-9

    def test_tolerance_must_be_positive(self):
        """Test that a zero tolerance is rejected."""
        with pytest.raises(InputValidationError):
            spectral_radius(complete(3), tol=0.0)


class TestAlgebraicConnectivity:
    """Tests for algebraic_connectivity."""

    @pytest.mark.parametrize("method", ["power", "dense"])
    def test_complete_graph(self, method):
        """Test lambda_2(K_n) = n."""
        assert algebraic_connectivity(complete(4), method=method) == pytest.approx(4.0, abs=1e-8)

    @pytest.mark.parametrize("method", ["power", "dense"])
    def test_single_edge(self, method):
        """Test lambda_2(P_2) = 2."""
        assert algebraic_connectivity(path(2), method=method) == pytest.approx(2.0, abs=1e-8)

    @pytest.mark.parametrize("method", ["power", "dense"])
    def test_star(self, method):
        """Test lambda_2 of a star is 1."""
        assert algebraic_connectivity(star(5), method=method) == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("method", ["power", "dense"])
    def test_disconnected(self, method):
        """Test that a disconnected graph has lambda_2 below 1e-7."""
        assert algebraic_connectivity(disjoint_triangles(), method=method) < 1e-7

    def test_single_vertex_rejected(self):
        """Test that one vertex has no lambda_2."""
        with pytest.raises(InputValidationError):
            algebraic_connectivity(snapshot_from_edges(1, []))


class TestSpectralSummary:
    """Tests for spectral_summary."""

    def test_matches_dense_oracle(self):
        """Test agreement with a full eigendecomposition on random graphs."""
        for snapshot in random_graphs():
            rho, lam = oracle(snapshot)
            result = spectral_summary(snapshot)
            assert result.spectral_radius == pytest.approx(rho, abs=1e-8)
            assert result.algebraic_connectivity == pytest.approx(
                lam if snapshot.connected else 0.0, abs=1e-8
            )
            assert result.disconnected_by_spectrum == (not snapshot.connected)

    def test_single_vertex(self):
        """Test the degenerate single-vertex result."""
        result = spectral_summary(snapshot_from_edges(1, []))
        assert result.spectral_radius == 0.0
        assert result.algebraic_connectivity is None

    def test_disconnected_reports_zero(self):
        """Test that a disconnected snapshot reports exactly 0."""
        result = spectral_summary(disjoint_triangles())
        assert result.algebraic_connectivity == 0.0
        assert result.disconnected_by_spectrum

    def test_fallback_to_dense(self):
        """Test that a capped power iteration falls back and reports it."""
        events = []
        result = spectral_summary(
            path(8),
            max_iter=2,
            on_fallback=lambda quantity, reason: events.append(quantity),
        )
        assert events == ["spectral_radius"]
        assert result.spectral_radius == pytest.approx(2 * math.cos(math.pi / 9), abs=1e-8)

    def test_fallback_disabled(self):
        """Test that the convergence error surfaces without fallback."""
        with pytest.raises(SpectralConvergenceError):
            spectral_summary(path(8), max_iter=2, fallback=False)

    def test_component_count_cross_check(self):
        """Test that a wrong component count is caught."""
        wrong = disjoint_triangles()
        mislabeled = Snapshot(
            date=None,
            vertices=wrong.vertices,
            connectivity_param=0.0,
            adjacency=wrong.adjacency.copy(),
            auto_threshold=False,
            component_count=1,
        )
        with pytest.raises(InternalConsistencyError):
            spectral_summary(mislabeled)

    def test_power_fiedler_matches_dense_oracle(self):
        """Test the power-iteration lambda_2 path against a full eigendecomposition."""
        for snapshot in random_graphs():
            _, lam = oracle(snapshot)
            result = spectral_summary(snapshot, fiedler_method="power")
            assert result.algebraic_connectivity == pytest.approx(
                lam if snapshot.connected else 0.0, abs=1e-8
            )

    def test_iterations_and_residual_reported(self):
        """Test that the power path reports its work."""
        result = spectral_summary(path(6), fiedler_method="power")
        assert result.iterations_used > 0
        assert 0.0 <= result.residual <= 1e-9


class TestSpectralInvariants:
    """Properties that hold for every snapshot."""

    TOL = 1e-9

    def test_eigen_residual_bound(self):
        """Test ||Mx - mu x|| <= tol ||x|| for every returned estimate."""
        checked = 0
        for snapshot in random_graphs():
            adjacency = snapshot.adjacency.astype(float)
            lap = laplacian(snapshot).entries.astype(float)
            for method in ("power", "dense"):
                for matrix, solve in (
                    (adjacency, dominant_eigenpair),
                    (lap, fiedler_eigenpair),
                ):
                    try:
                        estimate = solve(snapshot, tol=self.TOL, method=method)
                    except SpectralConvergenceError:
                        continue
                    x = estimate.vector
                    bound = self.TOL * np.linalg.norm(x)
                    assert estimate.residual <= bound
                    direct = np.linalg.norm(matrix @ x - estimate.value * x)
                    assert direct <= bound + 1e-12
                    checked += 1
        assert checked >= 200

    def test_degree_bounds(self):
        """Test avg_degree <= rho <= max_degree and lambda_2 against the minimum degree."""
        for snapshot in random_graphs():
            rho, lam = oracle(snapshot)
            max_degree, avg_degree = degree_stats(snapshot)
            min_degree = int(snapshot.degree_seq.min())
            n = snapshot.n

            radius = spectral_summary(snapshot).spectral_radius
            assert radius == pytest.approx(rho, abs=1e-8)
            assert avg_degree <= radius + self.TOL
            assert radius <= max_degree + self.TOL
            assert rho >= math.sqrt(max_degree) - self.TOL

            lam2 = algebraic_connectivity(snapshot)
            assert lam2 == pytest.approx(lam, abs=1e-8)
            assert lam2 <= n / (n - 1) * min_degree + self.TOL
            if snapshot.edge_count < n * (n - 1) // 2:
                assert lam2 <= min_degree + self.TOL

    def test_monotone_across_thresholds(self):
        """Test that rho and lambda_2 never drop as the threshold grows."""
        rng = np.random.default_rng(7)
        points = [
            GeoPoint(lat=float(lat), lon=float(lon))
            for lat, lon in zip(rng.uniform(8, 33, 20), rng.uniform(68, 92, 20))
        ]
        dist = distance_matrix(points)
        vertices = [f"r{i}" for i in range(20)]
        thresholds = np.unique(dist.entries[np.triu_indices(20, k=1)])

        previous_rho, previous_lam = 0.0, 0.0
        for threshold in thresholds:
            snapshot = build_snapshot(None, vertices, dist, threshold=float(threshold))
            rho = spectral_radius(snapshot, method="dense")
            lam = algebraic_connectivity(snapshot, method="dense")
            assert rho >= previous_rho - self.TOL
            assert lam >= previous_lam - self.TOL
            previous_rho, previous_lam = rho, lam
        assert previous_rho == pytest.approx(19.0, abs=1e-8)
        assert previous_lam == pytest.approx(20.0, abs=1e-8)
