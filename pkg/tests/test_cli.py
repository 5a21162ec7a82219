import json

import numpy as np
import pytest

from concord.cli import main, parse_number, parse_number_list


@pytest.fixture
def run(capsys):
    def invoke(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


def test_parse_number_fractions():
    assert parse_number("7/24") == 7 / 24
    assert parse_number("0.5") == 0.5
    assert parse_number_list("7/24, 1/2,1") == [7 / 24, 0.5, 1.0]


def test_amatrix_d2(run):
    code, out, _ = run("amatrix", "--d", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["matrix"] == [[1, 1], [1, 0]]
    assert doc["labels"] == [[], [1, 2]]


def test_check_counterexample_exit_3(run):
    code, out, err = run("check", "--d", "3", "--pairs", "7/24,7/24,7/24")
    assert code == 3
    assert "not attainable" in err
    doc = json.loads(out)
    assert doc["feasible"] is False
    assert doc["phase1_objective"] > 1e-7


def test_check_feasible(run):
    code, out, _ = run("check", "--d", "3", "--pairs", "0.6,0.6,0.6")
    assert code == 0
    assert json.loads(out)["feasible"] is True


def test_bounds_fourasset(run, tmp_path):
    taus = {"12": -0.19, "13": -0.29, "14": 0.49, "23": -0.34, "24": 0.30, "34": -0.79}
    pairs = ",".join(str((1 + taus[k]) / 2) for k in ["12", "13", "14", "23", "24", "34"])
    sig = tmp_path / "partial.json"
    code, out, _ = run("check", "--d", "4", "--pairs", pairs)
    assert code == 0
    code, out, _ = run("bounds", "--d", "4", "--pairs", pairs, "--target", "1,2,3,4")
    assert code == 0
    doc = json.loads(out)
    assert doc["lower"][0] == pytest.approx(0.04, abs=1e-6)
    assert doc["upper"][0] == pytest.approx(0.0425, abs=1e-6)


def test_solve_signature_roundtrip(run, tmp_path):
    sig = tmp_path / "sig.json"
    labels = [[], [1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4], [1, 2, 3, 4]]
    values = [1, 0.639, 0.666, 0.598, 0.681, 0.630, 0.661, 0.364]
    sig.write_text(json.dumps({"d": 4, "labels": labels, "values": values}))
    out_file = tmp_path / "w.json"
    code, _, _ = run("solve", "--signature", str(sig), "--out", str(out_file))
    assert code == 0
    w = json.loads(out_file.read_text())
    assert np.abs(
        np.array(w["w"]) - np.array([0.364, 0.129, 0.069, 0.077, 0.098, 0.075, 0.066, 0.122])
    ).max() < 2e-3
    code, out, _ = run("signature", "--weights", str(out_file))
    assert code == 0
    back = json.loads(out)
    assert np.abs(np.array(back["values"]) - np.array(values)).max() < 1e-9


def test_solve_infeasible_exit_3(run, tmp_path):
    sig = tmp_path / "sig.json"
    sig.write_text(
        json.dumps(
            {
                "d": 3,
                "labels": [[], [1, 2], [1, 3], [2, 3]],
                "values": [1, 7 / 24, 7 / 24, 7 / 24],
            }
        )
    )
    code, _, err = run("solve", "--signature", str(sig))
    assert code == 3


def test_vertices_and_projection(run, tmp_path):
    pairs = ",".join(
        str((1 + t) / 2) for t in [-0.19, -0.29, 0.49, -0.34, 0.30, -0.79]
    )
    code, out, _ = run(
        "vertices", "--d", "4", "--pairs", pairs, "--target", "1,2,3,4"
    )
    assert code == 0
    doc = json.loads(out)
    assert len(doc["vertices"]) == 2
    proj = sorted(p[0] for p in doc["projection"])
    assert proj[0] == pytest.approx(0.04, abs=1e-6)
    assert proj[1] == pytest.approx(0.0425, abs=1e-6)


def test_skeletal(run):
    code, out, _ = run("skeletal", "--d", "4", "--k", "1,2/3,0.4")
    assert code == 0
    doc = json.loads(out)
    assert doc["attainable"] is True
    assert np.abs(np.array(doc["v"]) - np.array([0.4, 0.4, 0.2])).max() < 1e-9
    code, _, err = run("skeletal", "--d", "4", "--k", "1,0.4,0.4")
    assert code == 3


def test_bmatrix_fractions(run):
    code, out, _ = run("bmatrix", "--d", "7")
    assert code == 0
    doc = json.loads(out)
    assert doc["fractions"][1] == ["1", "5/7", "11/21", "3/7"]


def test_sample_and_validate_and_estimate(run, tmp_path):
    w_file = tmp_path / "w.json"
    w_file.write_text(json.dumps({"d": 3, "w": [0.5, 0.2, 0.2, 0.1]}))
    csv_file = tmp_path / "sample.csv"
    code, _, _ = run(
        "sample", "--weights", str(w_file), "--n", "4000", "--seed", "9",
        "--out", str(csv_file),
    )
    assert code == 0
    lines = csv_file.read_text().strip().splitlines()
    assert len(lines) == 4000
    code, out, _ = run("validate", "--data", str(csv_file), "--level", "0.01")
    assert code == 0
    assert json.loads(out)["passed"] is True
    code, out, _ = run("estimate", "--data", str(csv_file), "--ties")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 4000
    assert abs(sum(doc["weights"]["w"]) - 1) < 1e-9


def test_elliptical_and_tlimit(run, tmp_path):
    m_file = tmp_path / "P.json"
    m_file.write_text(
        json.dumps({"matrix": [[1, 0.2, 0.5], [0.2, 1, 0.8], [0.5, 0.8, 1]]})
    )
    code, out, _ = run("elliptical", "--matrix", str(m_file))
    assert code == 0
    doc = json.loads(out)
    assert doc["values"][2] == pytest.approx(2 / 3, abs=1e-12)
    code, out, _ = run("tlimit", "--matrix", str(m_file), "--mode", "analytic")
    assert code == 0
    w = json.loads(out)["w"]
    assert np.abs(np.array(w) - np.array([0.513, 0.051, 0.154, 0.282])).max() < 5e-4


def test_usage_errors_exit_2(run):
    code, _, _ = run("bogus")
    assert code == 2
    code, _, _ = run("check", "--d", "3")
    assert code == 2
    code, _, err = run("solve", "--signature", "/nonexistent.json")
    assert code == 2
    code, _, err = run("check", "--d", "3", "--pairs", "2,2,2")  # kappa > 1
    assert code == 2


def test_sample_json_format(run, tmp_path):
    w_file = tmp_path / "w.json"
    w_file.write_text(json.dumps({"d": 2, "w": [1.0, 0.0]}))
    code, out, _ = run("sample", "--weights", str(w_file), "--n", "3", "--seed", "1",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["values"]) == 3
    for row in doc["values"]:
        assert row[0] == pytest.approx(row[1])  # comonotone rows


def test_bounds_and_vertices_infeasible_exit_3(run):
    pairs = ",".join(["7/24"] * 6)
    code, _, err = run("bounds", "--d", "4", "--pairs", pairs, "--target", "1,2,3,4")
    assert code == 3
    code, _, err = run("vertices", "--d", "4", "--pairs", pairs)
    assert code == 3


def test_bounds_norm_objective_flag(run):
    taus = [-0.19, -0.29, 0.49, -0.34, 0.30, -0.79]
    pairs = ",".join(str((1 + t) / 2) for t in taus)
    code, out, _ = run("bounds", "--d", "4", "--pairs", pairs,
                       "--target", "1,2,3,4", "--norm-objective")
    assert code == 0
    doc = json.loads(out)
    assert doc["lower"][0] == pytest.approx(0.04, abs=1e-6)


def test_validate_exit_3_on_failure(run, tmp_path):
    import numpy as np

    rng = np.random.default_rng(1)
    csv_file = tmp_path / "noise.csv"
    csv_file.write_text("\n".join(
        ",".join(f"{x:.9f}" for x in row) for row in rng.random((200, 3))
    ))
    code, out, _ = run("validate", "--data", str(csv_file))
    assert code == 3
    assert json.loads(out)["passed"] is False
