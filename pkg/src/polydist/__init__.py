"""Exact distance distributions in regular polygons.

Given a regular L-gon and a reference point inside it, this package builds
the piecewise closed-form CDF of the distance to a uniformly placed node,
the PDF of the distance to the n-th nearest of N independent nodes, and the
Monte-Carlo / quadrature machinery to verify both.  A disk region covers
the many-sides limit.
"""

from .distributions import (
    DiskOverlap,
    NeighborModel,
    center_cdf,
    disk_cdf,
    nth_neighbor_pdf,
    vertex_cdf,
)
from .geometry import (
    DistanceProfile,
    Point,
    PolygonSpec,
    contains_points,
    distance_profile,
    perpendicular_distance,
    polygon_from,
    rotate_point,
    side_distance,
    vertex_distance,
)
from .montecarlo import (
    Histogram,
    SampleBatch,
    empirical_cdf,
    empirical_nth_histogram,
    empirical_nth_histogram_disk,
    grid_overlap_oracle,
    sample_uniform,
    sample_uniform_disk,
)
from .overlap import (
    circular_segment_area,
    corner_area,
    corner_area_deriv,
    segment_area,
    segment_area_deriv,
)
from .piecewise import OverlapTerm, PiecewiseOverlap, build_overlap

__version__ = "0.1.0"

__all__ = [
    "DiskOverlap",
    "DistanceProfile",
    "Histogram",
    "NeighborModel",
    "OverlapTerm",
    "PiecewiseOverlap",
    "Point",
    "PolygonSpec",
    "SampleBatch",
    "build_overlap",
    "center_cdf",
    "circular_segment_area",
    "contains_points",
    "corner_area",
    "corner_area_deriv",
    "disk_cdf",
    "distance_profile",
    "empirical_cdf",
    "empirical_nth_histogram",
    "empirical_nth_histogram_disk",
    "grid_overlap_oracle",
    "nth_neighbor_pdf",
    "perpendicular_distance",
    "polygon_from",
    "rotate_point",
    "sample_uniform",
    "sample_uniform_disk",
    "segment_area",
    "segment_area_deriv",
    "side_distance",
    "vertex_distance",
    "vertex_cdf",
    "__version__",
]
