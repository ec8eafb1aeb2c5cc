"""Daily geodesic threshold networks.

Each day's network joins two regions when their great-circle distance is at most the
connectivity parameter d(t), the smallest threshold that leaves the network connected.
That value is the bottleneck (heaviest) edge of a minimum spanning tree of the complete
distance graph, found here with dense Prim in O(n^2) without sorting the O(n^2) pairs.
"""

from dataclasses import dataclass, field
from datetime import date
from functools import cached_property
from typing import Optional, Sequence

import numpy as np
from scipy import sparse

from src.models import GeoPoint
from src.network.components import count_components
from src.network.geo import haversine_matrix
from src.utils.errors import InputValidationError, InternalConsistencyError, ThresholdError


def _read_only(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


def _frozen_copy(array: np.ndarray) -> np.ndarray:
    """Read-only copy; the caller's array stays writeable."""
    return _read_only(np.array(array, copy=True))


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric pairwise distances in kilometers with a zero diagonal."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", _frozen_copy(self.entries))

    @property
    def n(self) -> int:
        """Vertex count."""
        return self.entries.shape[0]

    def subset(self, indices: Sequence[int]) -> "DistanceMatrix":
        """Distances restricted to the given vertex indices, in that order."""
        idx = np.asarray(indices, dtype=np.int64)
        return DistanceMatrix(self.entries[np.ix_(idx, idx)].copy())


@dataclass(frozen=True, eq=False)
class Snapshot:
    """One day's network N(t)."""

    date: Optional[date]
    vertices: tuple[str, ...]
    connectivity_param: float
    adjacency: np.ndarray
    auto_threshold: bool = True
    component_count: int = field(default=0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "adjacency", _frozen_copy(self.adjacency))

    @property
    def n(self) -> int:
        """Vertex count."""
        return len(self.vertices)

    @cached_property
    def degree_seq(self) -> np.ndarray:
        """Degree of every vertex."""
        return _read_only(self.adjacency.sum(axis=1).astype(np.int64))

    @cached_property
    def edge_count(self) -> int:
        """Number of undirected edges."""
        return int(self.degree_seq.sum()) // 2

    @property
    def connected(self) -> bool:
        """True when the snapshot is a single component (vacuously for n <= 1)."""
        return self.component_count <= 1

    @cached_property
    def neighbors(self) -> list[np.ndarray]:
        """Sorted neighbor indices of every vertex."""
        return [np.flatnonzero(row) for row in self.adjacency]

    @cached_property
    def sparse_adjacency(self) -> sparse.csr_matrix:
        """Adjacency as a float CSR matrix."""
        return sparse.csr_matrix(self.adjacency, dtype=float)


@dataclass(frozen=True, eq=False)
class LaplacianView:
    """Graph Laplacian L = diag(degree) - A."""

    entries: np.ndarray

    @property
    def n(self) -> int:
        """Vertex count."""
        return self.entries.shape[0]


def distance_matrix(points: Sequence[GeoPoint]) -> DistanceMatrix:
    """Pairwise haversine distances of the given points."""
    if not points:
        raise InputValidationError("distance matrix needs at least one point")
    return DistanceMatrix(haversine_matrix(points))


def connectivity_parameter(dist: DistanceMatrix) -> float:
    """Smallest threshold d such that {(i, j) : d_ij <= d} is connected.

    Equal to the heaviest edge of a minimum spanning tree; 0 for a single vertex.
    """
    n = dist.n
    if n <= 1:
        return 0.0

    entries = dist.entries
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = entries[0].copy()
    best[0] = np.inf
    bottleneck = 0.0

    for _ in range(n - 1):
        candidate = np.where(in_tree, np.inf, best)
        j = int(np.argmin(candidate))
        bottleneck = max(bottleneck, float(candidate[j]))
        in_tree[j] = True
        np.minimum(best, entries[j], out=best)

    return bottleneck


def threshold_adjacency(dist: DistanceMatrix, threshold: float) -> np.ndarray:
    """Boolean adjacency with an edge wherever d_ij <= threshold, i != j."""
    adjacency = dist.entries <= threshold
    np.fill_diagonal(adjacency, False)
    return adjacency


def build_snapshot(
    day: Optional[date],
    vertices: Sequence[str],
    dist: DistanceMatrix,
    threshold: Optional[float] = None,
) -> Snapshot:
    """Build N(t) for one day.

    Args:
        day: Calendar date of the snapshot.
        vertices: Region ids, in the row order of ``dist``.
        dist: Distances among ``vertices``.
        threshold: Fixed threshold in km (what-if mode); derived from ``dist`` when None.

    Raises:
        ThresholdError: On a negative threshold or a size mismatch.
    """
    if len(vertices) != dist.n:
        raise ThresholdError(
            f"{len(vertices)} vertices but distance matrix is {dist.n}x{dist.n}"
        )
    if threshold is not None and threshold < 0:
        raise ThresholdError(f"threshold must be non-negative, got {threshold}")

    auto = threshold is None
    d = connectivity_parameter(dist) if auto else float(threshold)
    adjacency = threshold_adjacency(dist, d)
    components = count_components(adjacency)

    if auto and components > 1:
        raise InternalConsistencyError(
            f"derived threshold {d} km leaves {components} components"
        )

    return Snapshot(
        date=day,
        vertices=tuple(vertices),
        connectivity_param=d,
        adjacency=adjacency,
        auto_threshold=auto,
        component_count=components,
    )


def snapshot_from_edges(
    n: int,
    edges: Sequence[tuple[int, int]],
    day: Optional[date] = None,
) -> Snapshot:
    """Snapshot with an explicit edge list, for graphs not derived from coordinates."""
    adjacency = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        if u != v:
            adjacency[u, v] = adjacency[v, u] = True
    return Snapshot(
        date=day,
        vertices=tuple(str(i) for i in range(n)),
        connectivity_param=0.0,
        adjacency=adjacency,
        auto_threshold=False,
        component_count=count_components(adjacency),
    )


def laplacian(snapshot: Snapshot) -> LaplacianView:
    """Integer Laplacian of the snapshot; every row sums to exactly zero."""
    entries = -snapshot.adjacency.astype(np.int64)
    np.fill_diagonal(entries, snapshot.degree_seq)
    return LaplacianView(_read_only(entries))
