"""Closed-form building blocks of the disk/polygon overlap area.

Two families of terms are needed: the circular segment protruding beyond a
single side (``segment_area``) and the lens-shaped double-counted region at
a vertex where two neighbouring segments overlap (``corner_area``), plus
their radial derivatives.  Both are assembled from one primitive, the area
of a disk beyond a chord at given perpendicular distance.

All expressions clamp arccos arguments to [-1, 1] and square-root arguments
to non-negative values; floating round-off at activation radii would
otherwise produce NaNs.
"""

import math

import numpy as np

from .geometry import (
    Point,
    PolygonSpec,
    perpendicular_distance,
    side_distance,
    vertex_distance,
)

__all__ = [
    "circular_segment_area",
    "circular_segment_area_deriv",
    "segment_area",
    "corner_area",
    "segment_area_deriv",
    "corner_area_deriv",
]


def circular_segment_area(r, p):
    """Area of the part of a radius-``r`` disk beyond a chord.

    The chord lies at perpendicular distance ``p`` from the disk centre:
    r^2 (arccos(q) - q sqrt(1 - q^2)) with q = p/r, and 0 once p >= r.
    Works elementwise on arrays and broadcasts ``r`` against ``p``.

    Both terms are evaluated from the single rounded ratio q.  Expanding
    p sqrt(r^2 - p^2) separately loses all significance when r sits a few
    ulps above p, and such near-degenerate chords do occur as stored
    activation constants (perpendicular foot falling on a vertex).
    """
    r = np.asarray(r, dtype=float)
    p = np.asarray(p, dtype=float)
    safe_r = np.where(r > 0.0, r, np.inf)
    q = np.clip(p / safe_r, -1.0, 1.0)
    shape = np.maximum(np.arccos(q) - q * np.sqrt(1.0 - q * q), 0.0)
    area = r * r * shape
    if area.ndim == 0:
        return float(area)
    return area


def circular_segment_area_deriv(r, p):
    """Radial derivative of ``circular_segment_area``: 2 r arccos(p/r)."""
    r = np.asarray(r, dtype=float)
    p = np.asarray(p, dtype=float)
    safe_r = np.where(r > 0.0, r, np.inf)
    ratio = np.clip(p / safe_r, -1.0, 1.0)
    out = 2.0 * r * np.arccos(ratio)
    if out.ndim == 0:
        return float(out)
    return out


def segment_area(poly: PolygonSpec, u: Point, ell: int, r: float) -> float:
    """Area of the disk of radius ``r`` about ``u`` protruding beyond side ``ell``.

    Args:
        poly: polygon under study.
        u: reference point inside the closed polygon.
        ell: side index in 1..L.
        r: disk radius, non-negative.

    Returns:
        0 while ``r`` is below the shortest distance to the side; beyond it
        the difference of two chord-segment areas taken at radii ``r`` and
        that shortest distance.  When the perpendicular foot lies on the
        segment the second term vanishes and the plain chord-segment area
        remains.
    """
    p = perpendicular_distance(poly, u, ell)
    d = side_distance(poly, u, ell)
    if r < d:
        return 0.0
    return circular_segment_area(r, p) - circular_segment_area(d, p)


def corner_area(poly: PolygonSpec, u: Point, ell: int, r: float) -> float:
    """Overlap of the two side segments adjoining vertex ``ell``.

    This lens is double-subtracted when both neighbouring side segments are
    removed from the disk, so the overlap assembly adds it back once.

    Returns 0 while ``r`` is below the distance to the vertex; beyond it
    the half-sum of the two chord-segment differences minus the accumulated
    central-angle sector (pi/L) (r^2 - d_v^2).
    """
    dv = vertex_distance(poly, u, ell)
    if r < dv:
        return 0.0
    p_next = perpendicular_distance(poly, u, ell)
    p_prev = perpendicular_distance(poly, u, ell - 1 if ell > 1 else poly.sides)
    half = 0.5 * (
        circular_segment_area(r, p_next)
        - circular_segment_area(dv, p_next)
        + circular_segment_area(r, p_prev)
        - circular_segment_area(dv, p_prev)
    )
    return half - (math.pi / poly.sides) * (r * r - dv * dv)


def segment_area_deriv(poly: PolygonSpec, u: Point, ell: int, r: float) -> float:
    """Radial derivative of ``segment_area``: 2 r arccos(p/r) once active.

    The argument of the arccos is the perpendicular distance to the side's
    line, not the activation distance; the two differ exactly when the
    perpendicular foot falls off the segment.
    """
    d = side_distance(poly, u, ell)
    if r < d:
        return 0.0
    p = perpendicular_distance(poly, u, ell)
    return circular_segment_area_deriv(r, p)


def corner_area_deriv(poly: PolygonSpec, u: Point, ell: int, r: float) -> float:
    """Radial derivative of ``corner_area`` once active:
    r (arccos(p_next/r) + arccos(p_prev/r) - 2 pi / L).
    """
    dv = vertex_distance(poly, u, ell)
    if r < dv or r <= 0.0:
        return 0.0
    p_next = perpendicular_distance(poly, u, ell)
    p_prev = perpendicular_distance(poly, u, ell - 1 if ell > 1 else poly.sides)
    ang_next = math.acos(min(1.0, p_next / r))
    ang_prev = math.acos(min(1.0, p_prev / r))
    return r * (ang_next + ang_prev - 2.0 * math.pi / poly.sides)
