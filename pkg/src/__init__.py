"""spreadnet - daily geodesic threshold networks of infection spread."""

__version__ = "0.1.0"
