"""Distance distributions derived from the overlap engine.

Given the CDF F(r) of the distance from a reference point to one uniform
node, the distance to the n-th nearest of N independent nodes follows the
order-statistic density

    f_n(r) = (1 - F)^(N-n) F^(n-1) / B(N-n+1, n) * dF/dr,

where B is the beta function.  The normalizing constant is evaluated with
exact integer arithmetic up to N = 170 and in log-gamma space beyond, so
large node counts neither overflow nor lose the exactness of small ones.

Closed-form specializations avoid the general range assembly when the
reference point is the polygon centre or a vertex, and a disk region covers
the limiting case of many sides.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .geometry import Point, PolygonSpec
from .overlap import circular_segment_area

__all__ = [
    "NeighborModel",
    "DiskOverlap",
    "nth_neighbor_pdf",
    "center_cdf",
    "vertex_cdf",
    "disk_cdf",
]

# Node counts up to this bound use exact integer binomial arithmetic for
# the order-statistic constant; larger counts switch to log-gamma.
_EXACT_COUNT_LIMIT = 170


@dataclass(frozen=True)
class NeighborModel:
    """Node count N and neighbour rank n (1 = nearest, N = farthest)."""

    nodes: int
    rank: int

    def __post_init__(self):
        if self.nodes < 1:
            raise ValueError(f"node count must be at least 1, got {self.nodes}")
        if not 1 <= self.rank <= self.nodes:
            raise ValueError(
                f"neighbour rank must lie in 1..{self.nodes}, got {self.rank}"
            )


def _order_constant_log(N: int, n: int) -> float:
    """log(1 / B(N - n + 1, n)) = log(n * C(N, n))."""
    return float(gammaln(N + 1) - gammaln(n) - gammaln(N - n + 1))


def nth_neighbor_pdf(overlap, model: NeighborModel, r):
    """Density of the distance to the n-th nearest of N uniform nodes.

    Args:
        overlap: any object exposing ``cdf(r)`` and ``cdf_deriv(r)``
            (a PiecewiseOverlap or a DiskOverlap).
        model: the (N, n) pair.
        r: scalar or array of radii.

    Returns:
        f_n evaluated at ``r``, with the same shape as the input.
    """
    F = np.asarray(overlap.cdf(r), dtype=float)
    dF = np.asarray(overlap.cdf_deriv(r), dtype=float)
    scalar = F.ndim == 0
    F = np.atleast_1d(F)
    dF = np.atleast_1d(dF)
    N, n = model.nodes, model.rank

    if N <= _EXACT_COUNT_LIMIT:
        const = float(n * math.comb(N, n))
        out = const * (1.0 - F) ** (N - n) * F ** (n - 1) * dF
    else:
        log_const = _order_constant_log(N, n)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_f = np.where(n > 1, (n - 1) * np.log(F), 0.0)
            log_s = np.where(N > n, (N - n) * np.log1p(-F), 0.0)
            log_d = np.log(dF)
        out = np.exp(log_const + log_f + log_s + log_d)

    if scalar:
        return float(out[0])
    return out


def center_cdf(poly: PolygonSpec, r):
    """Distance CDF for a node seen from the polygon centre.

    Three ranges: a full disk up to the inradius, a disk minus L identical
    side segments up to the circumradius, and 1 beyond.
    """
    arr = np.asarray(r, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr < 0.0):
        raise ValueError("radius must be non-negative")
    R = poly.circumradius
    Ri = poly.inradius
    out = np.ones_like(arr)
    inner = arr <= Ri
    middle = (arr > Ri) & (arr < R)
    out[inner] = math.pi * arr[inner] ** 2 / poly.area
    rm = arr[middle]
    out[middle] = (
        math.pi * rm * rm - poly.sides * circular_segment_area(rm, Ri)
    ) / poly.area
    out = np.clip(out, 0.0, 1.0)
    if scalar:
        return float(out[0])
    return out


def vertex_cdf(poly: PolygonSpec, r):
    """Distance CDF for a node seen from vertex 1.

    The reference point sits on the boundary, so the first range is the
    interior-angle wedge.  Mirror-image sides and vertices activate in
    pairs at the vertex-to-vertex distances 2 R sin(j pi / L); for odd L
    the single opposite side activates separately at R (1 + cos(pi / L)),
    where its perpendicular foot lies on the segment.
    """
    arr = np.asarray(r, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr < 0.0):
        raise ValueError("radius must be non-negative")
    L = poly.sides
    R = poly.circumradius
    half = math.pi / L

    if L % 2 == 0:
        r_max = 2.0 * R
    else:
        r_max = 2.0 * R * math.cos(0.5 * half)

    overlap = 0.5 * poly.interior_angle * arr * arr
    for j in range(1, (L - 2) // 2 + 1):
        s_j = 2.0 * R * math.sin(j * half)
        q_next = R * (math.cos(half) - math.cos((2 * j + 1) * half))
        q_prev = R * (math.cos(half) - math.cos((2 * j - 1) * half))
        active = arr >= s_j
        ra = arr[active]
        overlap[active] += (
            -circular_segment_area(ra, q_next)
            + circular_segment_area(s_j, q_next)
            + circular_segment_area(ra, q_prev)
            - circular_segment_area(s_j, q_prev)
            - (2.0 * math.pi / L) * (ra * ra - s_j * s_j)
        )
    if L % 2 == 1:
        m = R * (1.0 + math.cos(half))
        active = arr >= m
        overlap[active] -= circular_segment_area(arr[active], m)

    out = np.clip(overlap / poly.area, 0.0, 1.0)
    out[arr >= r_max] = 1.0
    if scalar:
        return float(out[0])
    return out


@dataclass(frozen=True)
class DiskOverlap:
    """Distance CDF engine for a disk region (the many-sides limit).

    Drop-in counterpart of PiecewiseOverlap for a disk of radius
    ``circumradius`` centred at the origin, with the reference point at
    distance ``offset`` from the centre.

    Three ranges: a fully contained disk up to R - offset, a two-disk lens
    up to R + offset, and saturation beyond.
    """

    circumradius: float
    reference: Point

    def __post_init__(self):
        R = self.circumradius
        if not math.isfinite(R) or R <= 0.0:
            raise ValueError(f"disk radius must be positive, got {R}")
        if self.offset > R * (1.0 + 1e-12):
            raise ValueError(
                f"point ({self.reference.x}, {self.reference.y}) "
                f"lies outside the disk of radius {R}"
            )

    @property
    def offset(self) -> float:
        return math.hypot(self.reference.x, self.reference.y)

    @property
    def area(self) -> float:
        return math.pi * self.circumradius**2

    @property
    def support(self) -> float:
        return self.circumradius + self.offset

    @property
    def breakpoints(self) -> np.ndarray:
        R = self.circumradius
        psi = self.offset
        if psi <= 0.0:
            return np.array([R])
        if R - psi <= 0.0:
            return np.array([R + psi])
        return np.array([R - psi, R + psi])

    def cdf(self, r):
        arr = np.asarray(r, dtype=float)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
            raise ValueError("radius must be finite and non-negative")
        R = self.circumradius
        psi = self.offset
        lo = R - psi
        hi = R + psi
        out = np.ones_like(arr)
        inner = arr <= lo
        out[inner] = arr[inner] ** 2 / (R * R)
        middle = (arr > lo) & (arr < hi)
        rm = arr[middle]
        with np.errstate(invalid="ignore"):
            a1 = np.arccos(np.clip((rm * rm + psi * psi - R * R) / (2.0 * rm * psi), -1.0, 1.0))
            a2 = np.arccos(np.clip((R * R + psi * psi - rm * rm) / (2.0 * R * psi), -1.0, 1.0))
        zeta = (
            (psi + rm + R)
            * (-psi + rm + R)
            * (psi - rm + R)
            * (psi + rm - R)
        )
        lens = rm * rm * a1 + R * R * a2 - 0.5 * np.sqrt(np.maximum(zeta, 0.0))
        out[middle] = lens / (math.pi * R * R)
        out = np.clip(out, 0.0, 1.0)
        if scalar:
            return float(out[0])
        return out

    def cdf_deriv(self, r):
        arr = np.asarray(r, dtype=float)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
            raise ValueError("radius must be finite and non-negative")
        R = self.circumradius
        psi = self.offset
        lo = R - psi
        hi = R + psi
        out = np.zeros_like(arr)
        inner = arr <= lo
        out[inner] = 2.0 * arr[inner] / (R * R)
        middle = (arr > lo) & (arr < hi)
        rm = arr[middle]
        ang = np.arccos(
            np.clip((rm * rm + psi * psi - R * R) / (2.0 * rm * psi), -1.0, 1.0)
        )
        out[middle] = 2.0 * rm * ang / (math.pi * R * R)
        if scalar:
            return float(out[0])
        return out


def disk_cdf(R: float, u: Point, r):
    """Distance CDF in a disk of radius ``R`` from reference point ``u``.

    Raises:
        ValueError: if ``u`` lies outside the disk.
    """
    return DiskOverlap(R, u).cdf(r)
