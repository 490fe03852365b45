"""Command-line behavior: outputs, exit codes, determinism."""

import json
import subprocess
import sys

from conftest import FIXTURES

G1 = str(FIXTURES / "g1.graph")
G2 = str(FIXTURES / "g2.graph")
GENERATORS = str(FIXTURES / "g2_generators.json")


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "eulercount.cli", *args],
        capture_output=True, text=True,
    )


def test_count_g2_json():
    result = run_cli("count", G2)
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["count"] == 88
    assert payload["schema"] == "eulercount/1"
    for key in ("raw_sum", "residual", "terms", "seconds"):
        assert key in payload


def test_count_non_eulerian_exit_code():
    result = run_cli("count", G1)
    assert result.returncode == 3
    assert "not Eulerian" in result.stderr


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.graph"
    bad.write_text("2 1\n0 x\n")
    result = run_cli("count", str(bad))
    assert result.returncode == 2


def test_usage_error_exit_code():
    result = run_cli("count")  # missing path
    assert result.returncode == 1


def test_budget_exit_code():
    result = run_cli("count", G2, "--budget", "4")
    assert result.returncode == 4
    result = run_cli("count", G2, "--budget", "4", "--force")
    assert result.returncode == 0


def test_best_subcommand():
    result = run_cli("best", G2, "--orientation", "++++++++")
    payload = json.loads(result.stdout)
    assert payload["determinant"] == 6
    assert payload["count"] == 6


def test_count_directed():
    result = run_cli("count-directed", G2, "--orientation", "++++++++",
                     "--t", "4")
    payload = json.loads(result.stdout)
    assert payload["count"] == 6


def test_census_subcommand():
    result = run_cli(
        "census", G1, "--alpha", "[0,0,0,0,0,0,1,1,1]",
        "--length", "9", "--t", "2", "--subset", "6,7,8",
    )
    payload = json.loads(result.stdout)
    assert payload["count"] == 6


def test_orientations_table_rows():
    result = run_cli("orientations", G2, "--format", "table")
    lines = result.stdout.strip().splitlines()
    assert len(lines) == 17  # header + 16 orientations
    assert lines[0].split() == ["orientation", "arborescences", "count"]
    counts = sorted(int(line.split()[-1]) for line in lines[1:])
    assert counts == [5] * 8 + [6] * 8


def test_reduce_dump_rows_table():
    result = run_cli("reduce", G2, "--mode", "antisym", "--dump-rows",
                     "--format", "table")
    lines = result.stdout.strip().splitlines()
    assert len(lines) == 17  # header + 16 twist rows
    assert lines[1].split() == ["00000", "1", "6800", "66048"]
    rows = {tuple(line.split()) for line in lines[1:]}
    assert ("10000", "-1", "-112", "12288") in rows


def test_reduce_with_generators_json():
    result = run_cli("reduce", G2, "--mode", "combined",
                     "--generators", GENERATORS)
    payload = json.loads(result.stdout)
    assert payload["count"] == 88
    assert payload["orbits"] == 8


def test_reduce_orbit_table():
    result = run_cli("reduce", G2, "--mode", "aut", "--generators",
                     GENERATORS, "--orbits", "--format", "table")
    lines = result.stdout.strip().splitlines()
    assert len(lines) == 17  # header + 16 orbits
    assert lines[0].split() == ["representative", "size", "members"]


def test_oracle_subcommand():
    result = run_cli("oracle", G2, "--kind", "eulerian")
    assert json.loads(result.stdout)["count"] == 88
    result = run_cli("oracle", G2, "--kind", "circuits", "--length", "8")
    assert json.loads(result.stdout)["count"] == 6800
    result = run_cli(
        "oracle", G1, "--kind", "walks", "--length", "9", "--t", "2",
        "--alpha", "[0,0,0,0,0,0,1,1,1]", "--subset", "6,7,8",
    )
    assert json.loads(result.stdout)["count"] == 3282


def test_spectra_subcommand():
    result = run_cli("spectra", G2, "--kind", "vertex", "--trace-table", "8",
                     "--dump-matrix")
    payload = json.loads(result.stdout)
    assert payload["vertex_traces"]["8"] == 66048
    assert len(payload["vertex_spectrum"]) == 4
    matrix = payload["vertex_matrix"]
    assert matrix[0][2] == [2.0, 0.0]  # doubled pair, zero twist


def test_tree_flag_overrides():
    result = run_cli("count", G2, "--tree", "0,2,3")
    payload = json.loads(result.stdout)
    assert payload["count"] == 88
    assert payload["tree"] == [0, 2, 3]


def test_json_deterministic_modulo_seconds():
    a = json.loads(run_cli("count", G2).stdout)
    b = json.loads(run_cli("count", G2).stdout)
    a.pop("seconds"), b.pop("seconds")
    assert a == b


def test_method_vertex_flag():
    result = run_cli("count", G2, "--method", "vertex", "--serial")
    assert json.loads(result.stdout)["count"] == 88


def test_report_table_empty_is_header_only():
    from eulercount.cli import report_table

    assert report_table([], ["a", "b"]) == "a  b"
    assert report_table([], ["a", "b"], "csv") == "a,b"


def test_no_exact_flag():
    result = run_cli("count", G2, "--no-exact")
    payload = json.loads(result.stdout)
    assert payload["count"] == 88
    assert payload["exact"] is False
    assert payload["residual"] < 1e-6
