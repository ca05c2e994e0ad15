"""Independent verification back ends for the closed-form engine.

Nothing here reuses the piecewise terms: uniform points come from
acceptance-rejection sampling in the bounding square, empirical CDFs and
n-th-neighbour histograms are plain counting, and the area oracle measures
the overlap on a midpoint grid.  Agreement between these estimates and the
closed forms is the end-to-end correctness argument.

Reproducibility contract: all randomness flows from 64-bit seeds through
per-run substreams (seed, run-index), so results are bit-identical for a
given seed no matter how runs are scheduled or batched.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .distributions import NeighborModel
from .geometry import (
    Point,
    PolygonSpec,
    contains_points,
    distance_profile,
    side_normals,
)

__all__ = [
    "SampleBatch",
    "Histogram",
    "sample_uniform",
    "sample_uniform_disk",
    "empirical_cdf",
    "empirical_nth_histogram",
    "empirical_nth_histogram_disk",
    "grid_overlap_oracle",
]


@dataclass(frozen=True)
class SampleBatch:
    """Accepted uniform samples plus the bookkeeping to reproduce them.

    Attributes:
        points: (count, 2) array, every row inside the closed region.
        seed: seed the batch was drawn with.
        polygon: region sampled, or None for a disk batch.
        candidates_drawn: bounding-square candidates examined up to and
            including the one that completed the batch.
    """

    points: np.ndarray
    seed: int
    polygon: PolygonSpec | None
    candidates_drawn: int


@dataclass(frozen=True)
class Histogram:
    """Equal-width histogram normalized to a density."""

    edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray


def _generator(seed: int, run: int | None = None) -> np.random.Generator:
    if run is None:
        seq = np.random.SeedSequence(seed)
    else:
        seq = np.random.SeedSequence(seed, spawn_key=(run,))
    return np.random.Generator(np.random.PCG64(seq))


def _rejection_sample(
    rng: np.random.Generator,
    count: int,
    halfwidth: float,
    accept: Callable[[np.ndarray], np.ndarray],
    chunk: int,
) -> tuple[np.ndarray, int]:
    """First ``count`` accepted points in candidate-stream order.

    The accepted points and the reported candidate tally depend only on the
    seeded stream, not on the chunk size.
    """
    kept = []
    have = 0
    drawn = 0
    while have < count:
        candidates = rng.uniform(-halfwidth, halfwidth, size=(chunk, 2))
        good = np.nonzero(accept(candidates))[0]
        if have + len(good) >= count:
            need = count - have
            drawn += int(good[need - 1]) + 1
            kept.append(candidates[good[:need]])
            have = count
        else:
            drawn += chunk
            kept.append(candidates[good])
            have += len(good)
    points = np.concatenate(kept) if len(kept) > 1 else kept[0]
    return points, drawn


def sample_uniform(poly: PolygonSpec, count: int, seed: int) -> SampleBatch:
    """Uniform points in the polygon by acceptance-rejection.

    Candidates are uniform in the bounding square [-R, R]^2; those failing
    the half-plane containment test are discarded until ``count`` points
    are accepted.  Identical (seed, count, polygon) give identical batches.
    """
    if count < 1:
        raise ValueError(f"sample count must be at least 1, got {count}")
    rng = _generator(seed)
    points, drawn = _rejection_sample(
        rng,
        count,
        poly.circumradius,
        lambda pts: contains_points(poly, pts),
        chunk=max(1024, 3 * count),
    )
    points.setflags(write=False)
    return SampleBatch(points=points, seed=seed, polygon=poly, candidates_drawn=drawn)


def sample_uniform_disk(radius: float, count: int, seed: int) -> SampleBatch:
    """Uniform points in a disk about the origin by acceptance-rejection."""
    if count < 1:
        raise ValueError(f"sample count must be at least 1, got {count}")
    if radius <= 0.0:
        raise ValueError(f"disk radius must be positive, got {radius}")
    rng = _generator(seed)
    points, drawn = _rejection_sample(
        rng,
        count,
        radius,
        lambda pts: pts[:, 0] ** 2 + pts[:, 1] ** 2 <= radius * radius,
        chunk=max(1024, 3 * count),
    )
    points.setflags(write=False)
    return SampleBatch(points=points, seed=seed, polygon=None, candidates_drawn=drawn)


def empirical_cdf(batch: SampleBatch, u: Point, grid) -> np.ndarray:
    """Fraction of batch points within each grid radius of ``u``.

    Args:
        batch: sample batch.
        u: reference point.
        grid: ascending radii.

    Returns:
        Array of empirical CDF values, one per grid entry.
    """
    if len(batch.points) == 0:
        raise ValueError("empty sample batch")
    grid = np.asarray(grid, dtype=float)
    if np.any(np.diff(grid) < 0.0):
        raise ValueError("grid radii must be ascending")
    dist = np.hypot(batch.points[:, 0] - u.x, batch.points[:, 1] - u.y)
    dist.sort()
    return np.searchsorted(dist, grid, side="right") / len(dist)


def _nth_distance_runs(
    halfwidth: float,
    accept: Callable[[np.ndarray], np.ndarray],
    u: Point,
    model: NeighborModel,
    runs: int,
    seed: int,
) -> np.ndarray:
    if runs < 1:
        raise ValueError(f"run count must be at least 1, got {runs}")
    chunk = max(16, 4 * model.nodes)
    nth = np.empty(runs)
    k = model.rank - 1
    for run in range(runs):
        rng = _generator(seed, run)
        pts, _ = _rejection_sample(rng, model.nodes, halfwidth, accept, chunk)
        dist = np.hypot(pts[:, 0] - u.x, pts[:, 1] - u.y)
        nth[run] = np.partition(dist, k)[k]
    return nth


def _density_histogram(values: np.ndarray, support: float, bins: int) -> Histogram:
    if bins < 1:
        raise ValueError(f"bin count must be at least 1, got {bins}")
    counts, edges = np.histogram(
        np.clip(values, 0.0, support), bins=bins, range=(0.0, support)
    )
    width = edges[1] - edges[0]
    density = counts / (len(values) * width)
    for arr in (edges, counts, density):
        arr.setflags(write=False)
    return Histogram(edges=edges, counts=counts, density=density)


def empirical_nth_histogram(
    poly: PolygonSpec,
    u: Point,
    model: NeighborModel,
    runs: int,
    bins: int,
    seed: int,
) -> Histogram:
    """Simulated density of the n-th nearest of N nodes.

    Each run places ``model.nodes`` uniform points in the polygon and
    records the distance of the ``model.rank``-th nearest to ``u``; the
    histogram covers [0, furthest possible distance] with equal bins.
    """
    support = float(distance_profile(poly, u).sorted_distances[-1])
    nth = _nth_distance_runs(
        poly.circumradius,
        lambda pts: contains_points(poly, pts),
        u,
        model,
        runs,
        seed,
    )
    return _density_histogram(nth, support, bins)


def empirical_nth_histogram_disk(
    radius: float,
    u: Point,
    model: NeighborModel,
    runs: int,
    bins: int,
    seed: int,
) -> Histogram:
    """Disk-region counterpart of ``empirical_nth_histogram``."""
    psi = math.hypot(u.x, u.y)
    if psi > radius * (1.0 + 1e-12):
        raise ValueError(f"point ({u.x}, {u.y}) lies outside the disk")
    support = radius + psi
    nth = _nth_distance_runs(
        radius,
        lambda pts: pts[:, 0] ** 2 + pts[:, 1] ** 2 <= radius * radius,
        u,
        model,
        runs,
        seed,
    )
    return _density_histogram(nth, support, bins)


def grid_overlap_oracle(
    poly: PolygonSpec, u: Point, r: float, resolution: int
) -> float:
    """Midpoint-grid measure of {inside polygon, within r of u}.

    Deterministic quadrature oracle for the closed-form overlap area with
    error of order R^2 / resolution.

    Args:
        poly: polygon region.
        u: reference point.
        r: disk radius.
        resolution: cells per axis over the bounding square; at least 100.

    Returns:
        Estimated overlap area.
    """
    resolution = int(resolution)
    if resolution < 100:
        raise ValueError(f"resolution must be at least 100, got {resolution}")
    R = poly.circumradius
    step = 2.0 * R / resolution
    centers = -R + (np.arange(resolution) + 0.5) * step
    normals = side_normals(poly)
    # Cell centres landing exactly on a side count half; a square aligns a
    # whole row of centres with each side, and full-counting that row would
    # bias the measure by step * perimeter / 2.
    lo = poly.inradius - 1e-12 * R
    hi = poly.inradius + 1e-12 * R
    xs = centers[None, :]
    r2 = r * r
    count = 0.0
    block = max(1, (1 << 22) // resolution)
    for start in range(0, resolution, block):
        ys = centers[start : start + block, None]
        inside = np.ones((ys.shape[0], resolution), dtype=bool)
        strict = np.ones_like(inside)
        for nx, ny in normals:
            proj = nx * xs + ny * ys
            inside &= proj <= hi
            strict &= proj < lo
        dx = xs - u.x
        dy = ys - u.y
        in_disk = dx * dx + dy * dy <= r2
        inside &= in_disk
        strict &= in_disk
        count += 0.5 * (int(inside.sum()) + int(strict.sum()))
    return count * step * step
