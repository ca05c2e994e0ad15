"""Command-line front end.

Subcommands:
    cdf          table of (r, F(r)) on a radius grid
    pdf          table of (r, f_n(r)) for the requested neighbour ranks
    breakpoints  distance vector, sort index vector, per-range active terms
    simulate     empirical CDF (sampling) or n-th-neighbour histograms
    verify       closed forms against Monte-Carlo, grid, and finite
                 differences; exit status 0 only if every check passes

The region is a regular polygon (``--sides L``) or a disk (``--sides
disk``); its size comes from exactly one of ``--circumradius`` or
``--area``.  The reference point is numeric ``x,y`` or one of the keywords
``center``, ``vertex`` (first vertex), ``midside`` (midpoint of the side
preceding the first vertex).  Any flag may also be supplied through
``--config FILE`` holding ``key = value`` lines; explicit flags win.

CSV output declares its columns in a header row and prints floats with 17
significant digits, so every value round-trips to the exact double.
"""

import argparse
import json
import math
import sys

import numpy as np
from scipy.integrate import quad

from .distributions import DiskOverlap, NeighborModel, nth_neighbor_pdf
from .geometry import Point, polygon_from
from .montecarlo import (
    empirical_cdf,
    empirical_nth_histogram,
    empirical_nth_histogram_disk,
    grid_overlap_oracle,
    sample_uniform,
    sample_uniform_disk,
)
from .piecewise import build_overlap

__all__ = ["main"]

_DEFAULTS = {
    "point": "center",
    "seed": 0,
    "runs": 10_000,
    "samples": 100_000,
    "bins": 50,
    "steps": 201,
    "resolution": 2000,
    "tolerance": 0.01,
    "rmin": 0.0,
}

_INT_KEYS = {"seed", "runs", "samples", "bins", "steps", "resolution", "nodes"}
_FLOAT_KEYS = {"circumradius", "area", "rmin", "rmax", "tolerance"}
_STR_KEYS = {"sides", "point", "neighbor", "output", "format"}


def _fmt(value) -> str:
    # 17 significant digits round-trip to the identical double.
    return f"{float(value):.17g}"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polydist",
        description="Exact distance distributions from a reference point "
        "to uniform nodes in a regular polygon or disk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def region_flags(p):
        p.add_argument("--config", help="file of key = value lines; flags override")
        p.add_argument("--sides", help="polygon side count (>= 3) or 'disk'")
        p.add_argument("--circumradius", type=float, help="circumscribed radius R")
        p.add_argument("--area", type=float, help="region area (alternative to R)")
        p.add_argument(
            "--point", help="reference point 'x,y' or center|vertex|midside"
        )
        p.add_argument("--output", help="write the document here instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
        p.add_argument("--seed", type=int, help="64-bit seed for all randomness")

    def grid_flags(p):
        p.add_argument("--rmin", type=float, help="grid start (default 0)")
        p.add_argument(
            "--rmax", type=float, help="grid end (default: saturation radius)"
        )
        p.add_argument("--steps", type=int, help="number of grid points")

    def node_flags(p):
        p.add_argument("--nodes", type=int, help="node count N")
        p.add_argument("--neighbor", help="neighbour rank 1..N or 'all'")

    p = sub.add_parser("cdf", help="closed-form distance CDF table")
    region_flags(p)
    grid_flags(p)

    p = sub.add_parser("pdf", help="n-th neighbour distance PDF table")
    region_flags(p)
    grid_flags(p)
    node_flags(p)

    p = sub.add_parser("breakpoints", help="piecewise structure of the CDF")
    region_flags(p)

    p = sub.add_parser("simulate", help="empirical CDF or neighbour histograms")
    region_flags(p)
    grid_flags(p)
    node_flags(p)
    p.add_argument("--runs", type=int, help="simulation runs for histograms")
    p.add_argument("--samples", type=int, help="sample count for the empirical CDF")
    p.add_argument("--bins", type=int, help="histogram bin count")

    p = sub.add_parser("verify", help="closed forms vs independent oracles")
    region_flags(p)
    node_flags(p)
    p.add_argument("--samples", type=int, help="Monte-Carlo sample count")
    p.add_argument("--resolution", type=int, help="grid-oracle cells per axis")
    p.add_argument(
        "--tolerance", type=float, help="empirical-CDF deviation tolerance"
    )

    return parser


def _load_config_file(path: str, parser: argparse.ArgumentParser) -> dict:
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    parser.error(f"{path}:{lineno}: expected 'key = value'")
                key, _, value = line.partition("=")
                key = key.strip().replace("-", "_")
                value = value.strip()
                if key in _INT_KEYS:
                    values[key] = int(value)
                elif key in _FLOAT_KEYS:
                    values[key] = float(value)
                elif key in _STR_KEYS:
                    values[key] = value
                else:
                    parser.error(f"{path}:{lineno}: unknown config key {key!r}")
    except OSError as exc:
        parser.error(f"cannot read config file {path}: {exc}")
    return values


def _merge_config(ns: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    if getattr(ns, "config", None):
        for key, value in _load_config_file(ns.config, parser).items():
            if hasattr(ns, key) and getattr(ns, key) is None:
                setattr(ns, key, value)
    for key, value in _DEFAULTS.items():
        if hasattr(ns, key) and getattr(ns, key) is None:
            setattr(ns, key, value)
    if getattr(ns, "format", None) is None:
        # The piecewise structure is nested; a flat table is opt-in there.
        ns.format = "json" if ns.command == "breakpoints" else "csv"


def _resolve_point(ns, parser, region: str, poly, radius: float) -> Point:
    text = str(ns.point).strip().lower()
    if text == "center":
        return Point(0.0, 0.0)
    if text == "vertex":
        return Point(radius, 0.0)
    if text == "midside":
        if region == "disk":
            parser.error("--point midside is undefined for the disk region")
        a = poly.vertices[-1]
        b = poly.vertices[0]
        return Point(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
    try:
        x_text, y_text = str(ns.point).split(",")
        return Point(float(x_text), float(y_text))
    except ValueError:
        parser.error(
            f"--point must be 'x,y' or center|vertex|midside, got {ns.point!r}"
        )


def _resolve_region(ns, parser):
    """Build the evaluation engine and a config echo from parsed flags."""
    if ns.sides is None:
        parser.error("--sides is required (an integer >= 3 or 'disk')")
    token = str(ns.sides).strip().lower()
    if (ns.circumradius is None) == (ns.area is None):
        parser.error("exactly one of --circumradius or --area must be given")

    if token == "disk":
        if ns.circumradius is not None:
            radius = float(ns.circumradius)
        else:
            radius = math.sqrt(float(ns.area) / math.pi)
        point = _resolve_point(ns, parser, "disk", None, radius)
        engine = DiskOverlap(radius, point)
        poly = None
        sides: int | str = "disk"
    else:
        try:
            sides = int(token)
        except ValueError:
            parser.error(f"--sides must be an integer >= 3 or 'disk', got {ns.sides!r}")
        if ns.circumradius is not None:
            radius = float(ns.circumradius)
        else:
            # Invert area = (1/2) L R^2 sin(2 pi / L).
            radius = math.sqrt(
                2.0 * float(ns.area) / (sides * math.sin(2.0 * math.pi / sides))
            )
        poly = polygon_from(sides, radius)
        point = _resolve_point(ns, parser, "polygon", poly, radius)
        engine = build_overlap(poly, point)

    config = {
        "command": ns.command,
        "sides": sides,
        "circumradius": radius,
        "area": engine.area,
        "point": [point.x, point.y],
        "seed": getattr(ns, "seed", None),
    }
    return engine, poly, point, config


def _radius_grid(ns, parser, engine) -> np.ndarray:
    rmin = float(ns.rmin)
    rmax = float(ns.rmax) if ns.rmax is not None else engine.support
    steps = int(ns.steps)
    if steps < 2:
        parser.error(f"--steps must be at least 2, got {steps}")
    if not 0.0 <= rmin < rmax:
        parser.error(f"need 0 <= rmin < rmax, got rmin={rmin}, rmax={rmax}")
    return np.linspace(rmin, rmax, steps)


def _resolve_ranks(ns, parser) -> tuple[int, list[int]]:
    if ns.nodes is None:
        parser.error("--nodes is required for this command")
    nodes = int(ns.nodes)
    token = "all" if ns.neighbor is None else str(ns.neighbor).strip().lower()
    if token == "all":
        return nodes, list(range(1, nodes + 1))
    try:
        rank = int(token)
    except ValueError:
        parser.error(f"--neighbor must be an integer or 'all', got {ns.neighbor!r}")
    if not 1 <= rank <= nodes:
        parser.error(f"--neighbor must lie in 1..{nodes}, got {rank}")
    return nodes, [rank]


def _write_document(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_table(ns, config, columns, rows) -> None:
    if ns.format == "json":
        doc = {
            "config": config,
            "columns": list(columns),
            "rows": [[float(v) for v in row] for row in rows],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [",".join(columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    _write_document(text, ns.output)


# ── commands ──────────────────────────────────────────────────────────────


def _cmd_cdf(ns, parser) -> int:
    engine, _poly, _point, config = _resolve_region(ns, parser)
    grid = _radius_grid(ns, parser, engine)
    values = engine.cdf(grid)
    _emit_table(ns, config, ["r", "cdf"], np.column_stack([grid, values]))
    return 0


def _cmd_pdf(ns, parser) -> int:
    engine, _poly, _point, config = _resolve_region(ns, parser)
    nodes, ranks = _resolve_ranks(ns, parser)
    grid = _radius_grid(ns, parser, engine)
    columns = ["r"] + [f"f{n}" for n in ranks]
    table = [grid]
    for n in ranks:
        table.append(nth_neighbor_pdf(engine, NeighborModel(nodes, n), grid))
    config["nodes"] = nodes
    config["neighbors"] = ranks
    _emit_table(ns, config, columns, np.column_stack(table))
    return 0


def _disk_structure(engine: DiskOverlap) -> dict:
    edges = [0.0] + [float(b) for b in engine.breakpoints]
    labels = (
        ["contained_disk", "boundary_lens", "saturated"]
        if len(engine.breakpoints) == 2
        else ["contained_disk", "saturated"]
    )
    ranges = []
    for j, label in enumerate(labels):
        ranges.append(
            {
                "lower": edges[j],
                "upper": edges[j + 1] if j + 1 < len(edges) else None,
                "saturated": label == "saturated",
                "terms": [label] if label != "saturated" else [],
            }
        )
    return {
        "sides": "disk",
        "circumradius": engine.circumradius,
        "area": engine.area,
        "reference": [engine.reference.x, engine.reference.y],
        "offset": engine.offset,
        "breakpoints": [float(b) for b in engine.breakpoints],
        "ranges": ranges,
    }


def _cmd_breakpoints(ns, parser) -> int:
    engine, _poly, _point, config = _resolve_region(ns, parser)
    if isinstance(engine, DiskOverlap):
        doc = _disk_structure(engine)
    else:
        doc = engine.to_dict()
    if ns.format == "json":
        text = json.dumps({"config": config, "structure": doc}, indent=2) + "\n"
        _write_document(text, ns.output)
        return 0
    # Flat table: one row per distance entry, sorted entry, breakpoint, and
    # per-range term.
    lines = ["section,position,index,term,value"]
    if not isinstance(engine, DiskOverlap):
        L = doc["sides"]

        def label(idx: int) -> str:
            if idx <= L:
                return f"side_segment({idx})"
            return f"corner_lens({idx - L})"

        for i, value in enumerate(doc["distances"], start=1):
            lines.append(f"distance,{i},{i},{label(i)},{_fmt(value)}")
        for i, (idx, value) in enumerate(
            zip(doc["order"], doc["sorted_distances"]), start=1
        ):
            lines.append(f"sorted,{i},{idx},{label(idx)},{_fmt(value)}")
    for j, value in enumerate(doc["breakpoints"], start=1):
        lines.append(f"breakpoint,{j},,,{_fmt(value)}")
    for j, rng in enumerate(doc["ranges"]):
        if rng["saturated"]:
            lines.append(f"range,{j},,saturated,{_fmt(rng['lower'])}")
            continue
        for term in rng["terms"] or ["none"]:
            lines.append(f"range,{j},,{term},{_fmt(rng['lower'])}")
    _write_document("\n".join(lines) + "\n", ns.output)
    return 0


def _cmd_simulate(ns, parser) -> int:
    engine, poly, point, config = _resolve_region(ns, parser)
    disk = isinstance(engine, DiskOverlap)
    if ns.nodes is None:
        # Empirical CDF mode.
        config["samples"] = int(ns.samples)
        grid = _radius_grid(ns, parser, engine)
        if disk:
            batch = sample_uniform_disk(engine.circumradius, int(ns.samples), ns.seed)
        else:
            batch = sample_uniform(poly, int(ns.samples), ns.seed)
        values = empirical_cdf(batch, point, grid)
        _emit_table(ns, config, ["r", "ecdf"], np.column_stack([grid, values]))
        return 0
    nodes, ranks = _resolve_ranks(ns, parser)
    config.update({"nodes": nodes, "neighbors": ranks, "runs": int(ns.runs),
                   "bins": int(ns.bins)})
    columns = ["bin_lower", "bin_upper"]
    table = []
    for n in ranks:
        model = NeighborModel(nodes, n)
        if disk:
            hist = empirical_nth_histogram_disk(
                engine.circumradius, point, model, int(ns.runs), int(ns.bins), ns.seed
            )
        else:
            hist = empirical_nth_histogram(
                poly, point, model, int(ns.runs), int(ns.bins), ns.seed
            )
        if not table:
            table = [hist.edges[:-1], hist.edges[1:]]
        table.append(hist.density)
        columns.append(f"hist{n}")
    _emit_table(ns, config, columns, np.column_stack(table))
    return 0


def _fd_radii(engine, rng, count: int, h: float) -> np.ndarray:
    """Random radii staying clear of breakpoints and of zero."""
    keep = []
    bps = np.asarray(engine.breakpoints, dtype=float)
    while len(keep) < count:
        r = rng.uniform(0.0, engine.support)
        if r < 10.0 * h:
            continue
        if np.min(np.abs(bps - r)) < 100.0 * h:
            continue
        keep.append(r)
    return np.array(keep)


def _cmd_verify(ns, parser) -> int:
    engine, poly, point, config = _resolve_region(ns, parser)
    disk = isinstance(engine, DiskOverlap)
    samples = int(ns.samples)
    config.update({"samples": samples, "resolution": int(ns.resolution)})
    checks = []

    # Empirical CDF against the closed form.
    if disk:
        batch = sample_uniform_disk(engine.circumradius, samples, ns.seed)
    else:
        batch = sample_uniform(poly, samples, ns.seed)
    grid = np.linspace(0.0, engine.support, 512)
    deviation = float(
        np.max(np.abs(empirical_cdf(batch, point, grid) - engine.cdf(grid)))
    )
    checks.append(("empirical_cdf", deviation, float(ns.tolerance)))

    # Deterministic grid oracle for the overlap area (polygon only).
    if not disk:
        radii = np.linspace(0.0, engine.support, 14)[1:-1]
        worst = 0.0
        for r in radii:
            oracle = grid_overlap_oracle(poly, point, float(r), int(ns.resolution))
            worst = max(worst, abs(engine.overlap_area(float(r)) - oracle))
        checks.append(("grid_overlap_area", worst / engine.area, 1e-3))

    # Central finite differences of the CDF.
    h = 1e-6 * engine.circumradius if disk else 1e-6 * poly.circumradius
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(ns.seed)))
    radii = _fd_radii(engine, rng, 200, h)
    fd = (engine.cdf(radii + h) - engine.cdf(radii - h)) / (2.0 * h)
    deviation = float(np.max(np.abs(fd - engine.cdf_deriv(radii))))
    checks.append(("cdf_derivative_fd", deviation, 1e-5))

    # Neighbour PDF normalization, when a node count is requested.
    if ns.nodes is not None:
        nodes, ranks = _resolve_ranks(ns, parser)
        config.update({"nodes": nodes, "neighbors": ranks})
        interior = [float(b) for b in engine.breakpoints if 0.0 < b < engine.support]
        for n in ranks:
            model = NeighborModel(nodes, n)
            integral, _err = quad(
                lambda r: nth_neighbor_pdf(engine, model, r),
                0.0,
                engine.support,
                points=interior,
                limit=200,
            )
            checks.append((f"pdf_normalization_n{n}", abs(integral - 1.0), 1e-6))

    results = [
        {
            "name": name,
            "max_deviation": deviation,
            "tolerance": tolerance,
            "pass": bool(deviation <= tolerance),
        }
        for name, deviation, tolerance in checks
    ]
    all_pass = all(entry["pass"] for entry in results)
    if ns.format == "json":
        doc = {"config": config, "checks": results, "pass": all_pass}
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = ["name,max_deviation,tolerance,pass"]
        lines.extend(
            f"{e['name']},{_fmt(e['max_deviation'])},{_fmt(e['tolerance'])},"
            f"{str(e['pass']).lower()}"
            for e in results
        )
        lines.append(f"overall,,,{str(all_pass).lower()}")
        text = "\n".join(lines) + "\n"
    _write_document(text, ns.output)
    return 0 if all_pass else 1


def main(argv=None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    _merge_config(ns, parser)
    handlers = {
        "cdf": _cmd_cdf,
        "pdf": _cmd_pdf,
        "breakpoints": _cmd_breakpoints,
        "simulate": _cmd_simulate,
        "verify": _cmd_verify,
    }
    try:
        return handlers[ns.command](ns, parser)
    except ValueError as exc:
        print(f"polydist: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
