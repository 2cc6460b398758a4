"""End-to-end command line behaviour, run in-process through main()."""

import json

import jsonschema
import pytest

from conftest import EDGE_ONLY_ROWS, ALL_EFFICIENT_ROWS

from paretosimplex import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json_matrix(tmp_path, rows, name="matrix.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"k": len(rows), "n": len(rows[0]), "C": rows}))
    return str(path)


def write_csv_matrix(tmp_path, rows, name="matrix.csv"):
    path = tmp_path / name
    path.write_text("\n".join(",".join(str(v) for v in row) for row in rows) + "\n")
    return str(path)


@pytest.fixture
def edge_json(tmp_path):
    return write_json_matrix(tmp_path, EDGE_ONLY_ROWS, name="edge.json")


@pytest.fixture
def full_json(tmp_path):
    return write_json_matrix(tmp_path, ALL_EFFICIENT_ROWS, name="full.json")


def test_test_command_json_reports_validate(capsys, edge_json):
    code, out, _ = run(
        capsys, "test", edge_json, "--json", "1,0,0", "0.5,0.5,0", "0,0,1", "0.2,0.3,0.5"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    reports = [json.loads(line) for line in lines]
    for report in reports:
        jsonschema.validate(report, cli.REPORT_SCHEMA)
    assert [r["verdict"] for r in reports] == ["efficient", "efficient", "dominated", "dominated"]
    assert [r["test"] for r in reports] == ["T2", "T1", "closure", "T0"]
    assert reports[0]["class"] == "deterministic"
    assert reports[1]["class"] == "partial"
    assert reports[3]["class"] == "randomized"
    assert reports[1]["face"] == {"kind": "open-face", "support": [1, 2]}
    assert reports[2]["certificate"] is None
    assert min(reports[0]["certificate"]) == 1.0


def test_test_command_text_output(capsys, edge_json):
    code, out, _ = run(capsys, "test", edge_json, "1,0,0")
    assert code == 0
    assert "class: deterministic" in out
    assert "verdict: efficient" in out
    assert "test: T2" in out
    assert "certificate:" in out
    assert "face: vertex {1}" in out


def test_text_blocks_blank_line_separated(capsys, edge_json):
    code, out, _ = run(capsys, "test", edge_json, "1,0,0", "0,1,0")
    assert code == 0
    assert out.count("\n\n") == 1


def test_output_is_byte_identical_across_runs(capsys, edge_json):
    first = run(capsys, "test", edge_json, "--json", "0.5,0.5,0", "0.2,0.3,0.5")
    second = run(capsys, "test", edge_json, "--json", "0.5,0.5,0", "0.2,0.3,0.5")
    assert first == second


def test_json_floats_round_trip(capsys, edge_json):
    code, out, _ = run(capsys, "test", edge_json, "--json", "0.2,0.3,0.5")
    assert code == 0
    report = json.loads(out)
    # .17g output parses back to the exact double that was printed
    assert report["value"] == json.loads(cli._fmt(report["value"]))


def test_check_full_command(capsys, full_json, edge_json):
    code, out, _ = run(capsys, "check-full", full_json, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["full"] is True
    assert payload["certificate"] == [1, 2, 1]

    code, out, _ = run(capsys, "check-full", edge_json)
    assert code == 0
    assert out.strip() == "full: no"


def test_enumerate_command(capsys, edge_json, full_json):
    code, out, _ = run(capsys, "enumerate", edge_json, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["full"] is False
    assert payload["vertices"] == [1, 2]
    assert payload["faces"] == [[1, 2]]
    assert payload["exhaustive"] is True
    assert payload["warning"] is None

    code, out, _ = run(capsys, "enumerate", full_json)
    assert code == 0
    assert "full: yes" in out
    assert "efficient vertices: 1, 2, 3" in out
    assert "{1, 2}; {1, 3}; {2, 3}" in out


def test_enumerate_oracle_crosscheck(capsys, edge_json):
    code, out, _ = run(capsys, "enumerate", edge_json, "--oracle", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["oracle"]
    assert all(entry["agrees"] for entry in payload["oracle"])

    code, out, _ = run(capsys, "enumerate", edge_json, "--oracle")
    assert code == 0
    assert "DISAGREE" not in out


def test_scalarize_command(capsys, full_json, edge_json):
    code, out, _ = run(capsys, "scalarize", full_json, "--weights", "1,2,1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["coeffs"] == [2, 2, 2]
    assert payload["dmax"] == 2
    assert payload["argmax"] == [1, 2, 3]
    assert payload["solution_set"] == {"kind": "all", "support": [1, 2, 3]}

    code, out, _ = run(capsys, "scalarize", edge_json, "--weights", "1,1,1")
    assert code == 0
    assert "argmax: 1" in out
    assert "solution set: vertex {1}" in out


def test_bicheck_command(capsys, tmp_path):
    path = write_csv_matrix(tmp_path, [[3, 2, 1], [1, 2, 3]])
    code, out, _ = run(capsys, "bicheck", path, "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["full"] is True
    assert payload["ratios"] == [1, 1]

    path = write_csv_matrix(tmp_path, [[1, 2, 3], [1, 2, 3]], name="down.csv")
    code, out, _ = run(capsys, "bicheck", path)
    assert code == 0
    assert "full: no" in out


def test_bicheck_error_codes(capsys, edge_json, tmp_path):
    code, _, err = run(capsys, "bicheck", edge_json)
    assert code == 3
    assert "error:" in err

    path = write_csv_matrix(tmp_path, [[1, 1, 2], [0, 1, 2]], name="flat.csv")
    code, _, err = run(capsys, "bicheck", path)
    assert code == 2
    assert "error:" in err


def test_plot3_grid(capsys, edge_json):
    code, out, _ = run(capsys, "plot3", edge_json, "--density", "10")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x1,x2,x3,verdict"
    assert len(lines) == 1 + 66
    for line in lines[1:]:
        x1, x2, x3, verdict = line.split(",")
        expected = "efficient" if float(x3) == 0.0 else "dominated"
        assert verdict == expected

    code, out, _ = run(capsys, "plot3", edge_json, "--density", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["density"] == 2
    assert len(payload["rows"]) == 6


def test_plot3_error_codes(capsys, tmp_path, edge_json):
    path = write_csv_matrix(tmp_path, [[1, 2], [2, 1]], name="two.csv")
    code, _, err = run(capsys, "plot3", path, "--density", "4")
    assert code == 3

    code, _, err = run(capsys, "plot3", edge_json, "--density", "0")
    assert code == 2
    assert "density" in err


def test_oracle_command(capsys, edge_json):
    code, out, _ = run(capsys, "oracle", edge_json, "--json", "0,0,1", "1,0,0")
    assert code == 0
    first, second = (json.loads(line) for line in out.strip().splitlines())
    assert first == {"point": [0, 0, 1], "verdict": "dominated"}
    assert second["verdict"] == "efficient"

    code, out, _ = run(capsys, "oracle", edge_json, "0,0,1")
    assert code == 0
    assert "verdict: dominated" in out


def test_csv_sniff_and_format_override(capsys, tmp_path):
    csv_path = write_csv_matrix(tmp_path, EDGE_ONLY_ROWS)
    code, out, _ = run(capsys, "check-full", csv_path)
    assert code == 0
    assert "full: no" in out

    odd_path = tmp_path / "matrix.txt"
    odd_path.write_text(json.dumps({"C": EDGE_ONLY_ROWS}))
    code, _, _ = run(capsys, "check-full", str(odd_path))
    assert code == 2
    code, out, _ = run(capsys, "check-full", str(odd_path), "--format", "json")
    assert code == 0
    assert "full: no" in out


def test_matrix_file_errors(capsys, tmp_path, edge_json):
    code, _, err = run(capsys, "check-full", str(tmp_path / "missing.json"))
    assert code == 2
    assert "cannot read" in err

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "check-full", str(bad))
    assert code == 2

    wrong_n = tmp_path / "wrong.json"
    wrong_n.write_text(json.dumps({"k": 3, "n": 4, "C": EDGE_ONLY_ROWS}))
    code, _, err = run(capsys, "check-full", str(wrong_n))
    assert code == 2
    assert "disagrees" in err


def test_point_dimension_mismatch_exit(capsys, edge_json):
    code, _, err = run(capsys, "test", edge_json, "0.5,0.5")
    assert code == 3
    assert "error:" in err

    code, _, _ = run(capsys, "scalarize", edge_json, "--weights", "1,1")
    assert code == 3


def test_malformed_point_literal(capsys, edge_json):
    code, _, err = run(capsys, "test", edge_json, "0.5,oops,0.5")
    assert code == 2
    assert "malformed point" in err

    code, _, _ = run(capsys, "test", edge_json, "0.5,0.4,0.2")
    assert code == 2


def test_usage_errors_exit_2(capsys):
    assert cli.main([]) == 2
    capsys.readouterr()
    assert cli.main(["no-such-command"]) == 2
    capsys.readouterr()


def test_enumeration_cap_exit_code(capsys, tmp_path):
    rows = [list(range(1, 18)), list(range(17, 0, -1))]
    path = write_csv_matrix(tmp_path, rows, name="wide.csv")
    code, _, err = run(capsys, "enumerate", path)
    assert code == 5
    assert "error:" in err

    code, out, _ = run(capsys, "enumerate", path, "--allow-large-n", "--max-support", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["warning"] is not None
    assert payload["exhaustive"] is False


def test_tolerance_flags_reach_the_classifier(capsys, edge_json):
    code, out, _ = run(capsys, "test", edge_json, "--tol-x", "1e-3", "--tol-d", "1e-2",
                       "--json", "0.9995,0.0005,0")
    assert code == 0
    assert json.loads(out)["class"] == "deterministic"

    code, _, _ = run(capsys, "test", edge_json, "--tol-x", "-1", "1,0,0")
    assert code == 2
