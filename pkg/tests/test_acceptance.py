"""End-to-end acceptance checks, one printed verdict line per criterion.

Run under pytest (``pytest -s tests/test_acceptance.py`` shows the lines)
or standalone (``python3 tests/test_acceptance.py``).
"""

import math
import time

import numpy as np
from scipy.integrate import quad
from scipy.special import betainc

from polydist.distributions import (
    DiskOverlap,
    NeighborModel,
    center_cdf,
    nth_neighbor_pdf,
)
from polydist.geometry import Point, contains_points, polygon_from, rotate_point
from polydist.montecarlo import (
    empirical_nth_histogram,
    empirical_nth_histogram_disk,
    grid_overlap_oracle,
)
from polydist.piecewise import build_overlap

SEED = 1789


def _report(number: int, name: str, problems: list) -> None:
    verdict = "PASS" if not problems else "FAIL"
    line = f"ACCEPTANCE {number} ({name}): {verdict}"
    if problems:
        line += " [" + "; ".join(problems) + "]"
    print(line)
    assert not problems, "; ".join(problems)


def _interior_point(rng, poly) -> Point:
    R = poly.circumradius
    while True:
        x, y = rng.uniform(-R, R, size=2)
        if contains_points(poly, np.array([[x, y]]))[0]:
            return Point(float(x), float(y))


def _bin_probabilities(engine, model, edges) -> np.ndarray:
    # P(r_(n) <= t) for the n-th nearest of N uniform nodes is the
    # regularized incomplete beta I_F(t)(n, N - n + 1).
    stages = betainc(model.rank, model.nodes - model.rank + 1, engine.cdf(edges))
    return np.diff(stages)


def _histogram_deviation(engine, model, hist, runs: int) -> float:
    empirical = hist.counts / runs
    return float(np.max(np.abs(empirical - _bin_probabilities(engine, model, hist.edges))))


def test_acceptance_1_square_offcenter_structure():
    problems = []
    pw = build_overlap(polygon_from(4, 1.0), Point(0.5, -0.5))

    expect_bp = np.array([math.sqrt(0.5), math.sqrt(2.0), math.sqrt(10.0) / 2.0])
    if len(pw.breakpoints) != 3:
        problems.append(f"expected 3 breakpoints, got {len(pw.breakpoints)}")
    else:
        dev = float(np.max(np.abs(np.asarray(pw.breakpoints) - expect_bp)))
        if dev > 1e-12:
            problems.append(f"breakpoint deviation {dev:.3g} > 1e-12")

    order = list(pw.profile.order)
    if order != [4, 1, 3, 5, 8, 2, 6, 7]:
        problems.append(f"sort order {order}")

    expect_terms = [
        {"side_segment(4)"},
        {"side_segment(4)", "side_segment(1)", "side_segment(3)",
         "corner_lens(1)", "corner_lens(4)"},
        {"side_segment(4)", "side_segment(1)", "side_segment(3)",
         "corner_lens(1)", "corner_lens(4)", "side_segment(2)"},
    ]
    for j, expected in enumerate(expect_terms):
        got = {term.label for term in pw.ranges[j]}
        if got != expected:
            problems.append(f"range {j} terms {sorted(got)}")

    _report(1, "square off-center piecewise structure", problems)


def test_acceptance_2_five_node_neighbour_histograms():
    start = time.monotonic()
    problems = []
    pw = build_overlap(polygon_from(4, 1.0), Point(0.5, -0.5))
    interior = [b for b in pw.breakpoints if 0.0 < b < pw.support]
    worst_dev = 0.0
    worst_integral = 0.0
    for n in range(1, 6):
        model = NeighborModel(5, n)
        hist = empirical_nth_histogram(
            pw.polygon, pw.reference, model, runs=10_000, bins=50, seed=SEED + n
        )
        worst_dev = max(worst_dev, _histogram_deviation(pw, model, hist, 10_000))
        integral, _ = quad(
            lambda r: float(nth_neighbor_pdf(pw, model, r)),
            0.0, pw.support, points=interior, limit=200,
        )
        worst_integral = max(worst_integral, abs(integral - 1.0))
    if worst_dev > 0.05:
        problems.append(f"bin deviation {worst_dev:.4f} > 0.05")
    if worst_integral > 1e-6:
        problems.append(f"pdf integral off by {worst_integral:.3g} > 1e-6")
    elapsed = time.monotonic() - start
    if elapsed > 60.0:
        problems.append(f"runtime {elapsed:.1f}s > 60s")
    _report(2, "five-node neighbour histograms in the square", problems)


def test_acceptance_3_farthest_of_ten_from_vertex_and_rim():
    start = time.monotonic()
    problems = []
    model = NeighborModel(10, 10)
    area = 100.0

    for L in (3, 4, 6):
        R = math.sqrt(2.0 * area / (L * math.sin(2.0 * math.pi / L)))
        poly = polygon_from(L, R)
        vertex = Point(R, 0.0)
        pw = build_overlap(poly, vertex)
        hist = empirical_nth_histogram(
            poly, vertex, model, runs=10_000, bins=50, seed=SEED + 30 + L
        )
        dev = _histogram_deviation(pw, model, hist, 10_000)
        if dev > 0.05:
            problems.append(f"L={L} deviation {dev:.4f} > 0.05")

    R = math.sqrt(area / math.pi)
    rim = Point(R, 0.0)
    disk = DiskOverlap(R, rim)
    hist = empirical_nth_histogram_disk(
        R, rim, model, runs=10_000, bins=50, seed=SEED + 40
    )
    dev = _histogram_deviation(disk, model, hist, 10_000)
    if dev > 0.05:
        problems.append(f"disk deviation {dev:.4f} > 0.05")

    elapsed = time.monotonic() - start
    if elapsed > 120.0:
        problems.append(f"runtime {elapsed:.1f}s > 120s")
    _report(3, "farthest of ten nodes from a vertex and from the rim", problems)


def test_acceptance_4_center_closed_form_matches_general_engine():
    problems = []
    worst = 0.0
    for L in (3, 4, 5, 6, 12):
        poly = polygon_from(L, 1.0)
        pw = build_overlap(poly, Point(0.0, 0.0))
        grid = np.linspace(0.0, poly.circumradius, 1000)
        dev = float(np.max(np.abs(center_cdf(poly, grid) - pw.cdf(grid))))
        worst = max(worst, dev)
        if dev > 1e-12:
            problems.append(f"L={L} deviation {dev:.3g} > 1e-12")
    _report(4, "center closed form equals the general engine", problems)


def test_acceptance_5_closed_form_areas_match_grid_oracle():
    start = time.monotonic()
    problems = []
    rng = np.random.default_rng(SEED + 5)
    worst = 0.0
    for _ in range(100):
        L = int(rng.integers(3, 13))
        poly = polygon_from(L, 1.0)
        u = _interior_point(rng, poly)
        pw = build_overlap(poly, u)
        r = float(rng.uniform(0.0, 1.02 * pw.support))
        oracle = grid_overlap_oracle(poly, u, r, 2000)
        worst = max(worst, abs(pw.overlap_area(r) - oracle) / poly.area)
    if worst > 1e-3:
        problems.append(f"relative area deviation {worst:.3g} > 1e-3")
    elapsed = time.monotonic() - start
    if elapsed > 120.0:
        problems.append(f"runtime {elapsed:.1f}s > 120s")
    _report(5, "closed-form areas match the grid oracle", problems)


def test_acceptance_6_derivative_matches_finite_differences():
    problems = []
    rng = np.random.default_rng(SEED + 6)
    worst = 0.0
    checked = 0
    for _ in range(10):
        L = int(rng.integers(3, 13))
        poly = polygon_from(L, 1.0)
        pw = build_overlap(poly, _interior_point(rng, poly))
        h = 1e-6 * poly.circumradius
        bps = np.asarray(pw.breakpoints)
        radii = []
        while len(radii) < 100:
            r = float(rng.uniform(0.0, pw.support))
            if r < 10.0 * h or float(np.min(np.abs(bps - r))) < 100.0 * h:
                continue
            radii.append(r)
        radii = np.array(radii)
        fd = (pw.cdf(radii + h) - pw.cdf(radii - h)) / (2.0 * h)
        worst = max(worst, float(np.max(np.abs(fd - pw.cdf_deriv(radii)))))
        checked += len(radii)
    if checked != 1000:
        problems.append(f"checked {checked} radii, wanted 1000")
    if worst > 1e-5:
        problems.append(f"derivative deviation {worst:.3g} > 1e-5")
    _report(6, "derivative matches central finite differences", problems)


def test_acceptance_7_cdf_sanity_across_random_configurations():
    problems = []
    rng = np.random.default_rng(SEED + 7)
    for case in range(200):
        L = int(rng.integers(3, 13))
        R = float(rng.uniform(0.5, 2.0))
        poly = polygon_from(L, R)
        u = _interior_point(rng, poly)
        pw = build_overlap(poly, u)
        tag = f"case {case} (L={L})"

        grid = np.linspace(0.0, pw.support, 33)
        if float(np.min(np.diff(pw.cdf(grid)))) < -1e-14:
            problems.append(f"{tag}: non-monotone")
        if pw.cdf(0.0) != 0.0:
            problems.append(f"{tag}: F(0) != 0")
        if pw.cdf(pw.support) != 1.0 or pw.cdf(1.5 * pw.support) != 1.0:
            problems.append(f"{tag}: no saturation at the last breakpoint")

        for j, b in enumerate(pw.breakpoints):
            gap = abs(
                pw.overlap_area_in_range(j, b) - pw.overlap_area_in_range(j + 1, b)
            ) / poly.area
            if gap > 1e-10:
                problems.append(f"{tag}: jump {gap:.3g} at breakpoint {j}")

        rs = rng.uniform(0.0, pw.support, size=16)
        base = pw.cdf(rs)
        turned = build_overlap(poly, rotate_point(u, int(rng.integers(1, L + 1)), poly))
        if float(np.max(np.abs(turned.cdf(rs) - base))) > 1e-12:
            problems.append(f"{tag}: not rotation invariant")
        mirrored = build_overlap(poly, Point(u.x, -u.y))
        if float(np.max(np.abs(mirrored.cdf(rs) - base))) > 1e-12:
            problems.append(f"{tag}: not reflection invariant")

        if len(problems) > 8:
            break
    _report(7, "CDF sanity across 200 random configurations", problems)


def test_acceptance_8_many_sided_polygon_approaches_the_disk():
    problems = []
    pw = build_overlap(polygon_from(256, 1.0), Point(0.0, 0.0))
    disk = DiskOverlap(1.0, Point(0.0, 0.0))
    grid = np.linspace(0.0, 1.1, 2001)
    dev = float(np.max(np.abs(pw.cdf(grid) - disk.cdf(grid))))
    if dev > 1e-3:
        problems.append(f"uniform deviation {dev:.3g} > 1e-3")
    _report(8, "256-gon center matches the disk limit", problems)


if __name__ == "__main__":
    failures = 0
    for check in (
        test_acceptance_1_square_offcenter_structure,
        test_acceptance_2_five_node_neighbour_histograms,
        test_acceptance_3_farthest_of_ten_from_vertex_and_rim,
        test_acceptance_4_center_closed_form_matches_general_engine,
        test_acceptance_5_closed_form_areas_match_grid_oracle,
        test_acceptance_6_derivative_matches_finite_differences,
        test_acceptance_7_cdf_sanity_across_random_configurations,
        test_acceptance_8_many_sided_polygon_approaches_the_disk,
    ):
        try:
            check()
        except AssertionError:
            failures += 1
    raise SystemExit(1 if failures else 0)
