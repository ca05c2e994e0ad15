import json
import math
import shutil
import subprocess

import numpy as np
import pytest

from polydist.cli import main
from polydist.distributions import DiskOverlap, NeighborModel, nth_neighbor_pdf
from polydist.geometry import Point, polygon_from
from polydist.montecarlo import empirical_cdf, sample_uniform
from polydist.piecewise import build_overlap

SQUARE = ["--sides", "4", "--circumradius", "1", "--point", "0.5,-0.5"]


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cdf_csv_round_trips_to_engine_values(capsys):
    code, out, _ = run(["cdf", *SQUARE, "--steps", "9"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "r,cdf"
    assert len(lines) == 10
    pw = build_overlap(polygon_from(4, 1.0), Point(0.5, -0.5))
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    # 17 significant digits reproduce the exact doubles.
    assert rows[0, 0] == 0.0
    assert rows[-1, 0] == pw.support
    assert np.array_equal(rows[:, 1], pw.cdf(rows[:, 0]))


def test_cdf_json_document(capsys):
    code, out, _ = run(["cdf", *SQUARE, "--steps", "5", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["columns"] == ["r", "cdf"]
    assert doc["config"]["command"] == "cdf"
    assert doc["config"]["sides"] == 4
    assert doc["config"]["circumradius"] == 1.0
    assert doc["config"]["point"] == [0.5, -0.5]
    pw = build_overlap(polygon_from(4, 1.0), Point(0.5, -0.5))
    assert doc["config"]["area"] == pw.area
    rows = np.array(doc["rows"])
    assert rows.shape == (5, 2)
    assert np.array_equal(rows[:, 1], pw.cdf(rows[:, 0]))


def test_pdf_emits_one_column_per_rank(capsys):
    code, out, _ = run(["pdf", *SQUARE, "--nodes", "3", "--steps", "7"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "r,f1,f2,f3"
    assert len(lines) == 8
    pw = build_overlap(polygon_from(4, 1.0), Point(0.5, -0.5))
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    for col, n in zip(rows[:, 1:].T, (1, 2, 3)):
        expect = nth_neighbor_pdf(pw, NeighborModel(3, n), rows[:, 0])
        assert np.array_equal(col, expect)


def test_pdf_single_rank(capsys):
    code, out, _ = run(
        ["pdf", *SQUARE, "--nodes", "5", "--neighbor", "2", "--steps", "4"], capsys
    )
    assert code == 0
    assert out.split("\n")[0] == "r,f2"


def test_breakpoints_json_structure(capsys):
    code, out, _ = run(["breakpoints", *SQUARE], capsys)
    assert code == 0
    doc = json.loads(out)["structure"]
    assert doc["sides"] == 4
    assert doc["order"] == [4, 1, 3, 5, 8, 2, 6, 7]
    expect = [math.sqrt(0.5), math.sqrt(2.0), math.sqrt(10.0) / 2.0]
    assert np.allclose(doc["breakpoints"], expect, rtol=0.0, atol=1e-12)
    ranges = doc["ranges"]
    assert len(ranges) == 4
    assert ranges[0]["terms"] == ["side_segment(4)"]
    assert sorted(ranges[1]["terms"]) == [
        "corner_lens(1)",
        "corner_lens(4)",
        "side_segment(1)",
        "side_segment(3)",
        "side_segment(4)",
    ]
    assert ranges[3]["saturated"] is True
    assert len(ranges[3]["terms"]) == 8


def test_breakpoints_csv_sections(capsys):
    code, out, _ = run(["breakpoints", *SQUARE, "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "section,position,index,term,value"
    sections = [line.split(",")[0] for line in lines[1:]]
    assert sections.count("distance") == 8
    assert sections.count("sorted") == 8
    assert sections.count("breakpoint") == 3
    # Ranges list cumulative terms: 1 + 5 + 6 active rows plus the
    # saturated marker.
    assert sections.count("range") == 13
    sorted_rows = [line.split(",") for line in lines[1:] if line.startswith("sorted")]
    assert [int(row[2]) for row in sorted_rows] == [4, 1, 3, 5, 8, 2, 6, 7]


def test_breakpoints_disk_structure(capsys):
    code, out, _ = run(
        ["breakpoints", "--sides", "disk", "--circumradius", "1",
         "--point", "0.3,0"], capsys
    )
    assert code == 0
    doc = json.loads(out)["structure"]
    assert doc["sides"] == "disk"
    assert doc["offset"] == 0.3
    assert np.allclose(doc["breakpoints"], [0.7, 1.3], rtol=0.0, atol=1e-15)
    labels = [rng["terms"] for rng in doc["ranges"]]
    assert labels == [["contained_disk"], ["boundary_lens"], []]
    assert doc["ranges"][-1]["saturated"] is True


def test_simulate_ecdf_matches_library_sampling(capsys):
    code, out, _ = run(
        ["simulate", "--sides", "6", "--circumradius", "1", "--point", "center",
         "--samples", "2000", "--steps", "5", "--seed", "3"], capsys
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "r,ecdf"
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    poly = polygon_from(6, 1.0)
    batch = sample_uniform(poly, 2000, seed=3)
    expect = empirical_cdf(batch, Point(0.0, 0.0), rows[:, 0])
    assert np.array_equal(rows[:, 1], expect)


def test_simulate_histograms_are_deterministic(capsys):
    argv = ["simulate", *SQUARE, "--nodes", "2", "--runs", "300",
            "--bins", "10", "--seed", "11"]
    code, first, _ = run(argv, capsys)
    assert code == 0
    code, second, _ = run(argv, capsys)
    assert code == 0
    assert first == second
    lines = first.strip().split("\n")
    assert lines[0] == "bin_lower,bin_upper,hist1,hist2"
    assert len(lines) == 11
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    widths = rows[:, 1] - rows[:, 0]
    for col in (2, 3):
        assert abs(float(np.sum(rows[:, col] * widths)) - 1.0) < 1e-12


def test_verify_passes_on_sound_configuration(capsys):
    code, out, _ = run(
        ["verify", "--sides", "4", "--circumradius", "1", "--point", "center",
         "--samples", "30000", "--resolution", "600", "--nodes", "2",
         "--seed", "0", "--format", "json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    names = [check["name"] for check in doc["checks"]]
    assert names == [
        "empirical_cdf",
        "grid_overlap_area",
        "cdf_derivative_fd",
        "pdf_normalization_n1",
        "pdf_normalization_n2",
    ]
    assert all(check["pass"] for check in doc["checks"])


def test_verify_fails_with_unreachable_tolerance(capsys):
    code, out, _ = run(
        ["verify", "--sides", "disk", "--circumradius", "1", "--point", "0.2,0",
         "--samples", "2000", "--tolerance", "1e-12", "--seed", "1"], capsys
    )
    assert code == 1
    lines = out.strip().split("\n")
    assert lines[0] == "name,max_deviation,tolerance,pass"
    assert lines[-1] == "overall,,,false"


def test_reference_point_outside_region_exits_two(capsys):
    code, _, err = run(["cdf", *SQUARE[:4], "--point", "5,5"], capsys)
    assert code == 2
    assert err.startswith("polydist: error:")


def test_parser_rejects_malformed_invocations(capsys):
    cases = [
        ["cdf", "--circumradius", "1"],
        ["cdf", "--sides", "4"],
        ["cdf", "--sides", "4", "--circumradius", "1", "--area", "2"],
        ["cdf", "--sides", "banana", "--circumradius", "1"],
        ["cdf", "--sides", "disk", "--circumradius", "1", "--point", "midside"],
        ["cdf", *SQUARE, "--steps", "1"],
        ["cdf", *SQUARE, "--rmin", "2", "--rmax", "1"],
        ["pdf", *SQUARE],
        ["pdf", *SQUARE, "--nodes", "3", "--neighbor", "4"],
        ["pdf", *SQUARE, "--nodes", "3", "--neighbor", "zero"],
    ]
    for argv in cases:
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2
        capsys.readouterr()


def test_degenerate_polygon_exits_two(capsys):
    code, _, err = run(["cdf", "--sides", "2", "--circumradius", "1"], capsys)
    assert code == 2
    assert "polydist: error:" in err


def test_config_file_supplies_defaults_and_flags_win(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text(
        "sides = 4\n"
        "circumradius = 1.0\n"
        "point = 0.5,-0.5  # reference point\n"
        "steps = 5\n"
        "# trailing comment line\n"
    )
    code, from_config, _ = run(["cdf", "--config", str(config)], capsys)
    assert code == 0
    code, from_flags, _ = run(["cdf", *SQUARE, "--steps", "5"], capsys)
    assert code == 0
    assert from_config == from_flags
    code, overridden, _ = run(["cdf", "--config", str(config), "--steps", "3"], capsys)
    assert code == 0
    assert len(overridden.strip().split("\n")) == 4


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    config = tmp_path / "bad.cfg"
    config.write_text("sides = 4\nwibble = 3\n")
    with pytest.raises(SystemExit) as info:
        main(["cdf", "--config", str(config), "--circumradius", "1"])
    assert info.value.code == 2
    capsys.readouterr()


def test_area_flag_is_equivalent_to_circumradius(capsys):
    # A square with circumradius 1 has area 2.
    code, via_radius, _ = run(["cdf", *SQUARE, "--steps", "9"], capsys)
    assert code == 0
    code, via_area, _ = run(
        ["cdf", "--sides", "4", "--area", "2", "--point", "0.5,-0.5",
         "--steps", "9"], capsys
    )
    assert code == 0
    assert via_radius == via_area


def test_disk_area_flag(capsys):
    code, out, _ = run(
        ["cdf", "--sides", "disk", "--area", str(math.pi), "--point", "center",
         "--steps", "3", "--format", "json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["config"]["circumradius"] - 1.0) < 1e-15
    engine = DiskOverlap(1.0, Point(0.0, 0.0))
    assert doc["rows"][-1][1] == engine.cdf(doc["rows"][-1][0])


def test_output_flag_writes_file_instead_of_stdout(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out, _ = run(["cdf", *SQUARE, "--steps", "4", "--output", str(target)],
                       capsys)
    assert code == 0
    assert out == ""
    text = target.read_text()
    assert text.startswith("r,cdf\n")
    assert len(text.strip().split("\n")) == 5


def test_console_script_is_installed():
    exe = shutil.which("polydist")
    assert exe is not None
    result = subprocess.run([exe, "--help"], capture_output=True, timeout=60)
    assert result.returncode == 0
    assert b"cdf" in result.stdout and b"verify" in result.stdout
