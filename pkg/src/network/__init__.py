"""Daily geodesic threshold networks and their metrics."""

from src.network.build import (
    DistanceMatrix,
    LaplacianView,
    Snapshot,
    build_snapshot,
    connectivity_parameter,
    distance_matrix,
    laplacian,
    snapshot_from_edges,
    threshold_adjacency,
)
from src.network.community import community_stats, louvain, louvain_best_of, modularity
from src.network.components import DisjointSet, count_components
from src.network.geo import EARTH_RADIUS_KM, haversine_distance, haversine_matrix
from src.network.metrics import (
    ClusteringResult,
    clustering,
    degree_stats,
    path_metrics,
    triangle_count,
    triangles_per_vertex,
)
from src.network.spectral import (
    SpectralResult,
    algebraic_connectivity,
    spectral_radius,
    spectral_summary,
)

__all__ = [
    "EARTH_RADIUS_KM",
    "ClusteringResult",
    "DisjointSet",
    "DistanceMatrix",
    "LaplacianView",
    "Snapshot",
    "SpectralResult",
    "algebraic_connectivity",
    "build_snapshot",
    "clustering",
    "community_stats",
    "connectivity_parameter",
    "count_components",
    "degree_stats",
    "distance_matrix",
    "haversine_distance",
    "haversine_matrix",
    "laplacian",
    "louvain",
    "louvain_best_of",
    "modularity",
    "path_metrics",
    "snapshot_from_edges",
    "spectral_radius",
    "spectral_summary",
    "threshold_adjacency",
    "triangle_count",
    "triangles_per_vertex",
]
