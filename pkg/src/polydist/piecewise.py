"""Piecewise assembly of the disk/polygon overlap area.

The 2L side and vertex distances from the reference point partition the
radius axis into ranges.  Crossing a side distance activates that side's
protruding segment (subtracted from the disk area); crossing a vertex
distance activates the corner lens where the two adjoining segments overlap
(added back once).  Within each range the overlap area is a fixed
combination of closed-form terms, so the CDF of the distance to a uniform
node, F(r) = O(r) / A, and its radial derivative evaluate in constant time
per query point.

Coincident activation radii (symmetric reference points) are merged into a
single breakpoint; beyond the last breakpoint the disk covers the polygon
and O(r) is pinned to the exact polygon area.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    DistanceProfile,
    Point,
    PolygonSpec,
    distance_profile,
)
from .overlap import circular_segment_area

__all__ = [
    "OverlapTerm",
    "PiecewiseOverlap",
    "build_overlap",
    "overlap_area",
    "cdf",
    "cdf_deriv",
]

# Activation radii closer than this (relative to the circumradius) are
# treated as equal and share one breakpoint; exact-equality range guards
# would fail under round-off for symmetric reference points.
BREAKPOINT_MERGE_RTOL = 1e-9

SIDE_SEGMENT = "side_segment"
CORNER_LENS = "corner_lens"


@dataclass(frozen=True)
class OverlapTerm:
    """One activated contribution: a side segment or a corner lens."""

    kind: str
    index: int

    @property
    def label(self) -> str:
        return f"{self.kind}({self.index})"


@dataclass(frozen=True)
class PiecewiseOverlap:
    """Piecewise closed-form overlap area O(r) and distance CDF F(r) = O/A.

    Attributes:
        polygon: the region.
        reference: the fixed query point inside the closed polygon.
        profile: all side/vertex distances from the reference point.
        breakpoints: ascending distinct positive activation radii; the last
            entry is the saturation radius where F reaches 1.
        ranges: one term tuple per range, cumulative left to right;
            ranges[j] applies on [breakpoints[j-1], breakpoints[j]) and the
            final entry is the saturated range.  ranges[0] is empty unless
            the reference point sits on a side or vertex (zero activation
            radius).
    """

    polygon: PolygonSpec
    reference: Point
    profile: DistanceProfile
    breakpoints: np.ndarray
    ranges: tuple[tuple[OverlapTerm, ...], ...]
    # (p, d, segment area at d) per side; (p_next, p_prev, d_v, areas at d_v)
    # per corner.  Private evaluation tables, aligned with 1-based indices.
    _side_params: np.ndarray = field(repr=False)
    _corner_params: np.ndarray = field(repr=False)

    # ── evaluation ────────────────────────────────────────────────────────

    @property
    def area(self) -> float:
        return self.polygon.area

    @property
    def support(self) -> float:
        """Radius beyond which the disk covers the whole polygon."""
        return float(self.breakpoints[-1])

    def _range_index(self, r: np.ndarray) -> np.ndarray:
        # Right-continuous convention: a query exactly on a breakpoint
        # belongs to the range that starts there.
        return np.searchsorted(self.breakpoints, r, side="right")

    def _accumulate(self, j: int, r: np.ndarray, derivative: bool) -> np.ndarray:
        L = self.polygon.sides
        if derivative:
            out = 2.0 * math.pi * r
        else:
            out = math.pi * r * r
        safe_r = np.where(r > 0.0, r, np.inf)
        for term in self.ranges[j]:
            i = term.index - 1
            if term.kind == SIDE_SEGMENT:
                p, _d, const = self._side_params[i]
                if derivative:
                    out -= 2.0 * r * np.arccos(np.minimum(p / safe_r, 1.0))
                else:
                    out -= circular_segment_area(r, p) - const
            else:
                p_next, p_prev, dv, c_next, c_prev = self._corner_params[i]
                if derivative:
                    out += r * (
                        np.arccos(np.minimum(p_next / safe_r, 1.0))
                        + np.arccos(np.minimum(p_prev / safe_r, 1.0))
                        - 2.0 * math.pi / L
                    )
                else:
                    out += 0.5 * (
                        circular_segment_area(r, p_next) - c_next
                        + circular_segment_area(r, p_prev) - c_prev
                    ) - (math.pi / L) * (r * r - dv * dv)
        return out

    def _evaluate(self, r, derivative: bool):
        arr = np.asarray(r, dtype=float)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
            raise ValueError("radius must be finite and non-negative")
        out = np.zeros_like(arr)
        bucket = self._range_index(arr)
        saturated = len(self.breakpoints)
        for j in np.unique(bucket):
            mask = bucket == j
            if j == saturated:
                out[mask] = 0.0 if derivative else self.polygon.area
            else:
                out[mask] = self._accumulate(int(j), arr[mask], derivative)
        if not derivative:
            out = np.clip(out, 0.0, self.polygon.area)
            # Boundary reference points leave squared-distance dust of
            # order 1e-32 in the zero-activated corner terms.
            out[arr == 0.0] = 0.0
        if scalar:
            return float(out[0])
        return out

    def overlap_area(self, r):
        """O(r): area of the radius-``r`` disk about the reference point
        intersected with the polygon.  Scalar or array ``r``."""
        return self._evaluate(r, derivative=False)

    def overlap_area_in_range(self, j: int, r) -> float:
        """Evaluate range ``j``'s closed-form expression at ``r`` regardless
        of which range ``r`` falls in (continuity checks at breakpoints)."""
        if not 0 <= j < len(self.ranges):
            raise ValueError(f"range index {j} outside 0..{len(self.ranges) - 1}")
        if j == len(self.breakpoints):
            return self.polygon.area
        arr = np.atleast_1d(np.asarray(r, dtype=float))
        return float(self._accumulate(j, arr, derivative=False)[0])

    def cdf(self, r):
        """F(r): probability that a uniform node lies within ``r``."""
        return self._evaluate(r, derivative=False) / self.polygon.area

    def cdf_deriv(self, r):
        """dF/dr, taking the right-hand expression at breakpoints; zero
        beyond the saturation radius."""
        return self._evaluate(r, derivative=True) / self.polygon.area

    # ── serialization ─────────────────────────────────────────────────────

    def to_dict(self) -> dict:
        """Structured description: distances, index vector, breakpoints,
        and the per-range active term labels."""
        edges = [0.0] + [float(b) for b in self.breakpoints]
        ranges = []
        for j, terms in enumerate(self.ranges):
            ranges.append(
                {
                    "lower": edges[j],
                    "upper": edges[j + 1] if j + 1 < len(edges) else None,
                    "saturated": j == len(self.breakpoints),
                    "terms": [t.label for t in terms],
                }
            )
        return {
            "sides": self.polygon.sides,
            "circumradius": self.polygon.circumradius,
            "area": self.polygon.area,
            "reference": [self.reference.x, self.reference.y],
            "distances": [float(v) for v in self.profile.distances],
            "sorted_distances": [float(v) for v in self.profile.sorted_distances],
            "order": [int(k) for k in self.profile.order],
            "breakpoints": [float(b) for b in self.breakpoints],
            "ranges": ranges,
        }


def _term_for(original_index: int, sides: int) -> OverlapTerm:
    if original_index <= sides:
        return OverlapTerm(SIDE_SEGMENT, original_index)
    return OverlapTerm(CORNER_LENS, original_index - sides)


def build_overlap(poly: PolygonSpec, u: Point) -> PiecewiseOverlap:
    """Assemble the piecewise overlap function for a reference point.

    Sorts the 2L activation radii, merges coincident ones, and records the
    cumulative active-term set of every range.

    Args:
        poly: polygon under study.
        u: reference point inside the closed polygon.

    Returns:
        An immutable PiecewiseOverlap ready for evaluation.

    Raises:
        ValueError: if ``u`` falls outside the closed polygon.
    """
    profile = distance_profile(poly, u)
    L = poly.sides
    tol = BREAKPOINT_MERGE_RTOL * poly.circumradius

    side_params = np.empty((L, 3))
    corner_params = np.empty((L, 5))
    for i in range(L):
        p = profile.perpendicular_distances[i]
        d = profile.side_distances[i]
        side_params[i] = (p, d, circular_segment_area(d, p))
        p_next = p
        p_prev = profile.perpendicular_distances[i - 1]
        dv = profile.vertex_distances[i]
        corner_params[i] = (
            p_next,
            p_prev,
            dv,
            circular_segment_area(dv, p_next),
            circular_segment_area(dv, p_prev),
        )
    side_params.setflags(write=False)
    corner_params.setflags(write=False)

    # Cluster the sorted activation radii; chained gaps below the merge
    # tolerance collapse into one breakpoint (the cluster's first value).
    clusters: list[tuple[float, list[OverlapTerm]]] = []
    previous = None
    for value, original in zip(profile.sorted_distances, profile.order):
        term = _term_for(int(original), L)
        if previous is not None and value - previous < tol:
            clusters[-1][1].append(term)
        else:
            clusters.append((float(value), [term]))
        previous = value

    active: list[OverlapTerm] = []
    if clusters and clusters[0][0] <= tol:
        # Reference point on a side or vertex: those terms are live from
        # radius zero and contribute no breakpoint.
        active.extend(clusters.pop(0)[1])

    breakpoints = np.array([c[0] for c in clusters])
    breakpoints.setflags(write=False)
    ranges = [tuple(active)]
    for _value, terms in clusters:
        active.extend(terms)
        ranges.append(tuple(active))

    return PiecewiseOverlap(
        polygon=poly,
        reference=u,
        profile=profile,
        breakpoints=breakpoints,
        ranges=tuple(ranges),
        _side_params=side_params,
        _corner_params=corner_params,
    )


def overlap_area(pw: PiecewiseOverlap, r):
    """Module-level alias for ``PiecewiseOverlap.overlap_area``."""
    return pw.overlap_area(r)


def cdf(pw: PiecewiseOverlap, r):
    """Module-level alias for ``PiecewiseOverlap.cdf``."""
    return pw.cdf(r)


def cdf_deriv(pw: PiecewiseOverlap, r):
    """Module-level alias for ``PiecewiseOverlap.cdf_deriv``."""
    return pw.cdf_deriv(r)
