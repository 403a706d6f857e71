"""Command-line surface: subcommands, exit codes, JSON files."""

import json

import pytest

from ramex.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_worked_case(tmp_path, capsys):
    out = tmp_path / "run"
    code, stdout, _ = run(capsys, "build", "--n", "4", "--d", "3", "--out", str(out))
    assert code == 0
    assert "passed" in stdout
    graph = json.loads((out / "graph.json").read_text())
    assert graph == {"n": 4, "d": 3, "multiplicity": [[2, 1], [1, 2]]}
    cert = json.loads((out / "certificate.json").read_text())
    assert cert["passed"] is True
    assert cert["q"] == 8
    assert cert["nontrivial_charpoly"] == ["-1", "0", "1"]


def test_build_rejects_odd_n(tmp_path, capsys):
    code, _, stderr = run(capsys, "build", "--n", "3", "--d", "3", "--out", str(tmp_path))
    assert code == 2
    assert "even" in stderr


def test_build_single_pair(tmp_path, capsys):
    code, _, _ = run(capsys, "build", "--n", "2", "--d", "5", "--out", str(tmp_path))
    assert code == 0
    graph = json.loads((tmp_path / "graph.json").read_text())
    assert graph["multiplicity"] == [[5]]


def test_build_then_certify_round_trip(tmp_path, capsys):
    code, _, _ = run(capsys, "build", "--n", "6", "--d", "3", "--out", str(tmp_path))
    assert code == 0
    code, stdout, _ = run(capsys, "certify", str(tmp_path / "graph.json"))
    assert code == 0
    assert json.loads(stdout)["passed"] is True


def test_build_trace_and_canonical_flag(tmp_path, capsys):
    code, _, _ = run(
        capsys,
        "build",
        "--n", "4", "--d", "3",
        "--out", str(tmp_path),
        "--trace",
        "--canonical-first-matching",
    )
    assert code == 0
    transcript = json.loads((tmp_path / "transcript.json").read_text())
    assert transcript["params"] == {"n": 4, "d": 3}
    assert transcript["canonical_first_matching"] is True
    assert transcript["stages"]
    stage = transcript["stages"][0]
    assert {"node", "node_poly_sha256", "children", "chosen"} <= set(stage)
    for child in stage["children"]:
        assert {"node", "poly_sha256", "passed"} <= set(child)
    assert transcript["certificate"]["passed"] is True


def test_certify_failing_graph(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 4, "d": 3, "multiplicity": [[3, 0], [0, 3]]}))
    code, stdout, _ = run(capsys, "certify", str(path))
    assert code == 1
    cert = json.loads(stdout)
    assert cert["passed"] is False
    assert cert["nontrivial_charpoly"] == ["-9", "0", "1"]


def test_certify_truncated_json(tmp_path, capsys):
    path = tmp_path / "trunc.json"
    path.write_text('{"n": 4, "d": 3, "multip')
    code, _, stderr = run(capsys, "certify", str(path))
    assert code == 2
    assert "cannot read" in stderr


def test_certify_irregular_graph(tmp_path, capsys):
    path = tmp_path / "irr.json"
    path.write_text(json.dumps({"n": 4, "d": 3, "multiplicity": [[2, 1], [2, 1]]}))
    code, _, stderr = run(capsys, "certify", str(path))
    assert code == 2
    assert "degree" in stderr


def test_node_poly_root(capsys):
    code, stdout, _ = run(
        capsys, "node-poly", '{"complete": [], "partial": []}', "--n", "4", "--d", "3"
    )
    assert code == 0
    assert json.loads(stdout) == ["-3", "0", "1"]


def test_node_poly_from_file_with_ctensor(tmp_path, capsys):
    path = tmp_path / "node.json"
    path.write_text(json.dumps({"complete": [], "partial": []}))
    code, stdout, _ = run(
        capsys, "node-poly", str(path), "--n", "6", "--d", "3", "--ctensor"
    )
    assert code == 0
    data = json.loads(stdout)
    assert data["node_poly"][-1] == "1"
    assert data["ctensor"]["values"][0][0][0] == "1"


def test_node_poly_malformed(capsys):
    code, _, stderr = run(
        capsys, "node-poly", '{"complete": [[1, 1]]}', "--n", "4", "--d", "3"
    )
    assert code == 2
    assert "malformed node" in stderr


def test_oracle_root(capsys):
    code, stdout, _ = run(
        capsys, "oracle", '{"complete": [], "partial": []}', "--n", "4", "--d", "3"
    )
    assert code == 0
    assert json.loads(stdout) == ["27", "0", "-12", "0", "1"]


def test_oracle_cap(capsys):
    code, _, stderr = run(
        capsys,
        "oracle",
        '{"complete": [], "partial": []}',
        "--n", "8", "--d", "3",
        "--oracle-cap", "10",
    )
    assert code == 2
    assert "cap" in stderr


def test_node_poly_matches_certified_nontrivial(tmp_path, capsys):
    """Leaf node-poly output agrees with certify's nontrivial polynomial."""
    code, _, _ = run(capsys, "build", "--n", "4", "--d", "3", "--out", str(tmp_path))
    assert code == 0
    cert = json.loads((tmp_path / "certificate.json").read_text())
    leaf = {"complete": [[1, 2], [1, 2], [2, 1]], "partial": []}
    code, stdout, _ = run(capsys, "node-poly", json.dumps(leaf), "--n", "4", "--d", "3")
    assert code == 0
    assert json.loads(stdout) == cert["nontrivial_charpoly"]


def test_usage_error_exit_code(capsys):
    assert main(["build", "--n", "4"]) == 2  # missing --d
    capsys.readouterr()
    assert main([]) == 2
    capsys.readouterr()
