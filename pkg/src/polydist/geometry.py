"""Regular-polygon geometry: construction, rotation symmetry, and the
side/vertex distance computations that drive the overlap engine.

The polygon is inscribed in a circle of radius ``circumradius`` centred at
the origin, with the first vertex pinned to ``[R, 0]`` and the vertices
listed anti-clockwise.  Every distance query is reduced to the frame of the
first side/vertex through the rotation operator, so a single set of
closed-form expressions covers all L sides and vertices.

Indexing convention: sides and vertices are numbered 1..L; side ``ell``
joins vertex ``ell`` to vertex ``ell + 1`` (cyclically), and vertex ``ell``
is shared by sides ``ell - 1`` and ``ell``.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Point",
    "PolygonSpec",
    "DistanceProfile",
    "polygon_from",
    "rotate_point",
    "side_normals",
    "contains_points",
    "violated_sides",
    "vertex_distance",
    "perpendicular_distance",
    "side_distance",
    "distance_profile",
]

# Containment slack relative to the circumradius: points this far beyond a
# bounding half-plane still count as inside, so reference points placed
# exactly on a side or at a vertex survive floating-point round-off.
CONTAINMENT_RTOL = 1e-12

# Distances closer than this (relative to the circumradius) are one tie
# group: symmetric configurations produce analytically equal distances that
# differ by a few ulps, and sorting those by float value instead of by index
# would scramble the reported order between runs of the same geometry.
DISTANCE_TIE_RTOL = 1e-9


@dataclass(frozen=True)
class Point:
    """Planar location, used both for reference points and vertices."""

    x: float
    y: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


@dataclass(frozen=True)
class PolygonSpec:
    """Regular L-gon with all derived scalar geometry precomputed.

    Attributes:
        sides: number of sides L (at least 3).
        circumradius: distance R from the centre to every vertex.
        area: enclosed area, (1/2) L R^2 sin(2 pi / L).
        inradius: apothem R cos(pi / L), the centre-to-side distance.
        interior_angle: angle between adjacent sides, pi (L - 2) / L.
        central_angle: angle one side subtends at the centre, 2 pi / L.
        side_length: 2 R sin(pi / L).
        vertices: the L vertices anti-clockwise, vertices[0] = [R, 0].
    """

    sides: int
    circumradius: float
    area: float
    inradius: float
    interior_angle: float
    central_angle: float
    side_length: float
    vertices: tuple[Point, ...]


@dataclass(frozen=True)
class DistanceProfile:
    """All 2L distances from a reference point, sorted and indexed.

    The combined ``distances`` vector lists the L shortest side distances
    first and the L vertex distances after them, so entries 1..L refer to
    sides and entries L+1..2L to vertices (1-based, matching ``order``).

    Attributes:
        side_distances: shortest distance to each closed side segment.
        vertex_distances: distance to each vertex.
        perpendicular_distances: distance to each side's infinite line.
        distances: concatenation [side_distances, vertex_distances].
        sorted_distances: ``distances`` in ascending order (exact up to the
            tie tolerance inside a tie group).
        order: 1-based indices into ``distances`` producing the ascending
            order; within a tie group the lower original index comes first.
    """

    side_distances: np.ndarray
    vertex_distances: np.ndarray
    perpendicular_distances: np.ndarray
    distances: np.ndarray
    sorted_distances: np.ndarray
    order: np.ndarray


def polygon_from(sides: int, circumradius: float) -> PolygonSpec:
    """Build a regular polygon from its side count and circumradius.

    Args:
        sides: number of sides L, at least 3.
        circumradius: circumscribed-circle radius R, strictly positive.

    Returns:
        A fully populated PolygonSpec.

    Raises:
        ValueError: if ``sides < 3`` or ``circumradius`` is not a positive
            finite number.
    """
    sides = int(sides)
    circumradius = float(circumradius)
    if sides < 3:
        raise ValueError(f"a polygon needs at least 3 sides, got {sides}")
    if not math.isfinite(circumradius) or circumradius <= 0.0:
        raise ValueError(f"circumradius must be positive, got {circumradius}")

    central = 2.0 * math.pi / sides
    vertices = tuple(
        Point(
            circumradius * math.cos(k * central),
            circumradius * math.sin(k * central),
        )
        for k in range(sides)
    )
    return PolygonSpec(
        sides=sides,
        circumradius=circumradius,
        area=0.5 * sides * circumradius * circumradius * math.sin(central),
        inradius=circumradius * math.cos(math.pi / sides),
        interior_angle=math.pi * (sides - 2) / sides,
        central_angle=central,
        side_length=2.0 * circumradius * math.sin(math.pi / sides),
        vertices=vertices,
    )


def rotate_point(
    u: Point, ell: int, poly: PolygonSpec, direction: str = "forward"
) -> Point:
    """Rotate a point by ``ell`` central angles about the origin.

    A forward rotation by one step maps vertex 1 onto vertex 2; the inverse
    rotation maps side/vertex ``ell`` problems onto the first side/vertex.

    Args:
        u: point to rotate.
        ell: integer number of central-angle steps (any sign).
        poly: polygon supplying the central angle.
        direction: "forward" (anti-clockwise) or "inverse".

    Returns:
        The rotated point.  ``ell`` multiples of the side count return the
        input unchanged, so a full turn is an exact identity.
    """
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    steps = ell % poly.sides
    if steps == 0:
        return u
    angle = steps * poly.central_angle
    if direction == "inverse":
        angle = -angle
    c = math.cos(angle)
    s = math.sin(angle)
    return Point(c * u.x - s * u.y, s * u.x + c * u.y)


def side_normals(poly: PolygonSpec) -> np.ndarray:
    """Outward unit normals of all sides as an (L, 2) array.

    Side ``ell`` lies on the line ``normal . w = inradius`` with normal
    direction angle (2 ell - 1) pi / L.
    """
    angles = (2.0 * np.arange(poly.sides) + 1.0) * math.pi / poly.sides
    return np.column_stack([np.cos(angles), np.sin(angles)])


def contains_points(poly: PolygonSpec, points: np.ndarray) -> np.ndarray:
    """Vectorized closed-polygon containment test.

    Args:
        poly: polygon to test against.
        points: array of shape (m, 2).

    Returns:
        Boolean array of shape (m,), True where the point lies inside the
        closed polygon (boundary included, within the containment slack).
    """
    pts = np.asarray(points, dtype=float)
    slack = poly.inradius + CONTAINMENT_RTOL * poly.circumradius
    return np.all(pts @ side_normals(poly).T <= slack, axis=1)


def violated_sides(poly: PolygonSpec, u: Point) -> list[int]:
    """1-based indices of the side half-planes that exclude ``u``.

    Empty when ``u`` lies inside the closed polygon.
    """
    proj = side_normals(poly) @ u.as_array()
    slack = poly.inradius + CONTAINMENT_RTOL * poly.circumradius
    return [int(i) + 1 for i in np.nonzero(proj > slack)[0]]


def _require_inside(poly: PolygonSpec, u: Point) -> None:
    bad = violated_sides(poly, u)
    if bad:
        raise ValueError(
            f"point ({u.x}, {u.y}) lies outside the polygon: "
            f"beyond the half-plane of side {bad[0]}"
        )


def _check_index(poly: PolygonSpec, ell: int) -> None:
    if not 1 <= ell <= poly.sides:
        raise ValueError(f"index {ell} outside 1..{poly.sides}")


def vertex_distance(poly: PolygonSpec, u: Point, ell: int) -> float:
    """Distance from ``u`` to vertex ``ell``.

    Computed in the first-vertex frame: rotate ``u`` back by ``ell - 1``
    steps and measure against the pinned vertex [R, 0].
    """
    _check_index(poly, ell)
    w = rotate_point(u, ell - 1, poly, "inverse")
    return math.hypot(w.x - poly.circumradius, w.y)


def perpendicular_distance(poly: PolygonSpec, u: Point, ell: int) -> float:
    """Distance from ``u`` to the infinite line through side ``ell``."""
    _check_index(poly, ell)
    w = rotate_point(u, ell - 1, poly, "inverse")
    half = math.pi / poly.sides
    return abs(w.x * math.cos(half) + w.y * math.sin(half) - poly.inradius)


def side_distance(poly: PolygonSpec, u: Point, ell: int) -> float:
    """Shortest distance from ``u`` to the closed segment of side ``ell``.

    Equals the perpendicular distance when the foot of the perpendicular
    falls on the segment; otherwise the nearer endpoint wins.  The
    on-segment test checks that neither endpoint is farther than one side
    length from the foot.
    """
    _check_index(poly, ell)
    w = rotate_point(u, ell - 1, poly, "inverse")
    half = math.pi / poly.sides
    nx = math.cos(half)
    ny = math.sin(half)
    signed = w.x * nx + w.y * ny - poly.inradius
    foot_x = w.x - signed * nx
    foot_y = w.y - signed * ny
    v1 = poly.vertices[0]
    v2 = poly.vertices[1]
    off_segment = (
        max(math.hypot(foot_x - v1.x, foot_y - v1.y),
            math.hypot(foot_x - v2.x, foot_y - v2.y))
        > poly.side_length
    )
    if off_segment:
        return min(math.hypot(w.x - v1.x, w.y - v1.y),
                   math.hypot(w.x - v2.x, w.y - v2.y))
    return abs(signed)


def distance_profile(poly: PolygonSpec, u: Point) -> DistanceProfile:
    """Collect, sort, and index all 2L side/vertex distances from ``u``.

    Args:
        poly: polygon under study.
        u: reference point; must lie inside the closed polygon.

    Returns:
        DistanceProfile with the combined distance vector (sides first,
        vertices second), its ascending sort, and the 1-based index vector
        realizing the sort.  Distances within ``DISTANCE_TIE_RTOL`` times
        the circumradius of each other (chained) form one tie group and are
        listed by ascending original index, so analytically equal distances
        come out in a reproducible order regardless of ulp-level noise.

    Raises:
        ValueError: if ``u`` falls outside the closed polygon; the message
            names the violated side half-plane.
    """
    _require_inside(poly, u)
    L = poly.sides
    side = np.array([side_distance(poly, u, ell) for ell in range(1, L + 1)])
    vert = np.array([vertex_distance(poly, u, ell) for ell in range(1, L + 1)])
    perp = np.array(
        [perpendicular_distance(poly, u, ell) for ell in range(1, L + 1)]
    )
    distances = np.concatenate([side, vert])
    order0 = np.argsort(distances, kind="stable")
    ranked = distances[order0]
    tol = DISTANCE_TIE_RTOL * poly.circumradius
    start = 0
    for i in range(1, 2 * L + 1):
        if i == 2 * L or ranked[i] - ranked[i - 1] >= tol:
            if i - start > 1:
                order0[start:i] = np.sort(order0[start:i])
            start = i
    sorted_distances = distances[order0]
    order = (order0 + 1).astype(np.int64)
    for arr in (side, vert, perp, distances, sorted_distances, order):
        arr.setflags(write=False)
    return DistanceProfile(
        side_distances=side,
        vertex_distances=vert,
        perpendicular_distances=perp,
        distances=distances,
        sorted_distances=sorted_distances,
        order=order,
    )
