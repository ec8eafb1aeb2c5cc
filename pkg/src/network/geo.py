"""Great-circle distances on a spherical Earth.

Distances use the arcsine form of the haversine formula, which stays accurate for
the short separations between neighbouring regions.
"""

import math
from typing import Sequence

import numpy as np

from src.models import GeoPoint

# Mean Earth radius (IUGG) in kilometers.
EARTH_RADIUS_KM = 6371.0088


def haversine_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance between two points in kilometers.

    Args:
        a: First point (degrees).
        b: Second point (degrees).

    Returns:
        Distance in kilometers, in [0, pi * EARTH_RADIUS_KM].
    """
    lat1, lon1, lat2, lon2 = map(math.radians, (a.lat, a.lon, b.lat, b.lon))
    h = (
        math.sin((lat2 - lat1) / 2) ** 2
        + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2
    )
    return 2 * EARTH_RADIUS_KM * math.asin(math.sqrt(min(1.0, h)))


def haversine_matrix(points: Sequence[GeoPoint]) -> np.ndarray:
    """Pairwise great-circle distances, vectorized.

    Returns:
        Symmetric (n, n) array in kilometers with an exactly zero diagonal.
    """
    lats = np.radians(np.fromiter((p.lat for p in points), dtype=float, count=len(points)))
    lons = np.radians(np.fromiter((p.lon for p in points), dtype=float, count=len(points)))

    dlat = lats[None, :] - lats[:, None]
    dlon = lons[None, :] - lons[:, None]
    cos_lat = np.cos(lats)
    h = np.sin(dlat / 2) ** 2 + np.outer(cos_lat, cos_lat) * np.sin(dlon / 2) ** 2
    dist = 2 * EARTH_RADIUS_KM * np.arcsin(np.sqrt(np.clip(h, 0.0, 1.0)))

    # Keep the upper triangle and mirror it so symmetry is exact.
    upper = np.triu(dist, k=1)
    return upper + upper.T
