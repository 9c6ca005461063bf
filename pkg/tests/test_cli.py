import csv
import io
import json
import math

import numpy as np
import pytest

from povmrange.cli import main
from povmrange.io import round_sig

Z_DOC = {"label": "Z", "effects": [{"matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]}, {"t": 0.5, "s": [0, 0, -0.5]}]}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def z_file(tmp_path):
    path = tmp_path / "z.json"
    path.write_text(json.dumps(Z_DOC))
    return path


@pytest.fixture
def trine_file(tmp_path, capsys):
    path = tmp_path / "trine.json"
    assert main(["catalog", "--kind", "trine", "--emit", str(path)]) == 0
    capsys.readouterr()
    return path


def _all_finite(obj):
    if isinstance(obj, float):
        return math.isfinite(obj)
    if isinstance(obj, dict):
        return all(_all_finite(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_all_finite(v) for v in obj)
    return True


def test_validate(capsys, z_file, tmp_path):
    code, doc = run_json(capsys, "validate", "--povm", z_file)
    assert code == 0 and doc["valid"] and doc["outcomes"] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"effects": [{"t": 0.5, "s": [0, 0, 0.4]}, {"t": 0.4, "s": [0, 0, -0.4]}]}))
    code, doc = run_json(capsys, "validate", "--povm", bad)
    assert code == 1 and not doc["valid"]
    assert doc["error_type"] == "CompletenessViolation"


def test_analyze_segment(capsys, z_file):
    code, doc = run_json(capsys, "analyze", "--povm", z_file)
    assert code == 0
    g = doc["geometry"]
    assert g["degeneracy"] == "segment"
    assert g["coordinate_half_widths"] == [0.5, 0.5]
    (axis,) = g["semi_axes"]
    assert [axis["length"] * d for d in axis["direction"]] == pytest.approx([0.5, -0.5], abs=1e-11)


def test_test_trine_outside(capsys, trine_file):
    code, doc = run_json(capsys, "test", "--povm", trine_file, "--q", "1,0,0")
    assert code == 0
    (v,) = doc["verdicts"]
    assert v["status"] == "outside-ellipsoid"
    assert v["witness_gap"] > 0
    code, _ = run(capsys, "test", "--povm", trine_file, "--q", "1,0,0", "--strict")
    assert code == 1


def test_fully_depolarized_catalog(capsys, tmp_path):
    path = tmp_path / "flat.json"
    assert main(["catalog", "--kind", "trine", "--lambda", "0", "--emit", str(path)]) == 0
    capsys.readouterr()
    code, doc = run_json(capsys, "test", "--povm", path, "--q", "0.3333333333,0.3333333333,0.3333333334")
    assert code == 0
    assert doc["verdicts"][0]["status"] in ("inside", "boundary")


def test_catalog_q_reports_both(capsys):
    code, doc = run_json(capsys, "catalog", "--kind", "square-mub", "--q", "0.5,0,0.25,0.25")
    assert code == 0
    assert doc["closed_form"] == "boundary"
    assert doc["theorem"]["status"] == "boundary"
    assert doc["agree"]


def test_table_and_witness(capsys, trine_file, tmp_path):
    table = tmp_path / "table.json"
    table.write_text(json.dumps({"rows": [[2 / 3, 1 / 6, 1 / 6], [1, 0, 0]]}))
    code, doc = run_json(capsys, "test", "--povm", trine_file, "--table", table)
    assert [v["status"] for v in doc["verdicts"]] == ["boundary", "outside-ellipsoid"]
    assert doc["compatible"] is False

    w = tmp_path / "w.json"
    w.write_text(json.dumps({"w": [[0, 0, 0], [1, -0.5, -0.5]]}))
    code, doc = run_json(capsys, "witness", "--povm", trine_file, "--w", w, "--table", table)
    assert code == 0
    assert doc["threshold"] == pytest.approx(0.5, abs=1e-11)
    assert doc["gap"] == pytest.approx(0.5, abs=1e-11)
    assert doc["violated"]


def test_round_trip_reproduces_documented_matrices(capsys, tmp_path):
    documented = {
        "trine": (3, np.array([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]) / 18),
        "tetrahedron": (4, (4 * np.eye(4) - np.ones((4, 4))) / 48),
        "square-mub": (4, np.kron(np.eye(2), [[1, -1], [-1, 1]]) / 16),
        "octahedron-mub": (6, np.kron(np.eye(3), [[1, -1], [-1, 1]]) / 36),
    }
    for kind, (n, Q) in documented.items():
        path = tmp_path / f"{kind}.json"
        assert main(["catalog", "--kind", kind, "--emit", str(path)]) == 0
        assert main(["validate", "--povm", str(path)]) == 0
        capsys.readouterr()
        code, out = run(capsys, "analyze", "--povm", path)
        doc = json.loads(out)
        expected_t = json.dumps([round_sig(1 / n)] * n)
        expected_Q = json.dumps([[round_sig(x) for x in row] for row in Q])
        assert json.dumps(doc["t"]) == expected_t
        assert json.dumps(doc["Q"]) == expected_Q


def test_sample_csv(capsys, z_file):
    code, out = run(capsys, "sample", "--povm", z_file, "--count", "5", "--mode", "mixed", "--seed", "2")
    assert code == 0
    assert "\r" not in out
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["q0", "q1"]
    assert len(rows) == 6
    for row in rows[1:]:
        assert sum(map(float, row)) == pytest.approx(1, abs=1e-11)


def test_plot_data(capsys, trine_file, tmp_path):
    code, out = run(capsys, "plot-data", "--povm", trine_file, "--projection", "simplex")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["kind", "q0", "q1", "q2", "x", "y"]
    assert len(rows) == 1 + 360 + 1
    assert rows[-1][0] == "center"

    tetra = tmp_path / "tetra.json"
    main(["catalog", "--kind", "tetrahedron", "--emit", str(tetra)])
    capsys.readouterr()
    code, out = run(capsys, "plot-data", "--povm", tetra, "--axes", "0,1,3", "--sphere-grid", "8x4")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][-3:] == ["x", "y", "z"]
    assert len(rows) == 1 + 32 + 1

    code, out = run(capsys, "plot-data", "--povm", tetra, "--projection", "simplex")
    assert code == 1


def test_outputs_are_finite_and_deterministic(capsys, trine_file):
    argv = ["analyze", "--povm", trine_file, "--lambda", "0.5"]
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second
    assert _all_finite(json.loads(first))
    assert "NaN" not in first and "Infinity" not in first


def test_usage_errors(capsys, trine_file):
    assert main([]) == 2
    assert main(["test", "--povm", str(trine_file)]) == 2
    assert main(["catalog", "--kind", "pentagon"]) == 2
    assert main(["sample", "--povm", str(trine_file), "--count", "0"]) == 2
    capsys.readouterr()


def test_domain_errors(capsys, trine_file, tmp_path):
    code, doc = run_json(capsys, "test", "--povm", trine_file, "--q", "0.5,0.5")
    assert code == 1 and doc["error_type"] == "DimensionMismatch"
    code, doc = run_json(capsys, "analyze", "--povm", tmp_path / "missing.json")
    assert code == 1
    code, doc = run_json(capsys, "analyze", "--povm", trine_file, "--lambda", "2")
    assert code == 1 and doc["error_type"] == "LambdaOutOfRange"


def test_pretty(capsys, z_file):
    _, out = run(capsys, "analyze", "--povm", z_file, "--pretty")
    assert out.startswith("{\n  ")
