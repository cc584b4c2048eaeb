import json
from pathlib import Path

import pytest

from qhecke.cli.main import main

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(autouse=True)
def _in_root(monkeypatch):
    monkeypatch.chdir(ROOT)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_cosets_s3(capsys):
    code, rep = report(capsys, "cosets", "inputs/ring_s3.json", "inputs/sub_12.json", "--max-grade", "0")
    assert code == 0 and rep["complete"]
    assert rep["results"]["L"]["D:(23)"] == rep["results"]["R"]["D:(23)"]
    assert set(rep["inputs"]) == {"inputs/ring_s3.json", "inputs/sub_12.json"}


def test_reports_are_deterministic(capsys):
    args = ("hecke", "inputs/su2_so3.recipe", "--max-grade", "12", "--threads", "3")
    a = run(capsys, *args)[1]
    b = run(capsys, *args[:-2])[1]
    assert a.replace('"horizon": 12', "") == b.replace('"horizon": 12', "")
    assert a == run(capsys, *args)[1]


def test_wall_time_goes_to_stderr(capsys):
    code, out, err = run(capsys, "validate", "inputs/ring_s3.json", "--max-grade", "0")
    assert code == 0 and "finished in" in err and "finished" not in out


def test_operator_norm(capsys):
    code, rep = report(capsys, "operator", "inputs/ring_s3.json", "inputs/sub_12.json",
                       "--max-grade", "0", "--tau", "D:(23)", "--norm")
    assert code == 0
    assert abs(rep["results"]["norm"]["lower"] - 2.0) <= 1e-9


def test_csv_table(capsys):
    code, out, _ = run(capsys, "hecke", "inputs/ring_s3.json", "inputs/sub_12.json",
                       "--max-grade", "0", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "left,right,target,coefficient,exact"
    assert "D:(23),D:(23),D:e,2/1,True" in lines


def test_build_round_trip(capsys, tmp_path):
    first = tmp_path / "d4.json"
    second = tmp_path / "d4b.json"
    assert main(["build", "inputs/d4.recipe", "-o", str(first)]) == 0
    assert main(["build", str(first), "-o", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert main(["validate", str(first), "--max-grade", "0"]) == 0


def test_hnn_nabla_and_kms(capsys):
    code, rep = report(capsys, "nabla", "inputs/hnn_profinite.recipe", "--max-grade", "2")
    assert code == 0
    assert rep["results"]["nabla"]["D:w"]["nabla"] == "3/1"
    assert rep["results"]["closed_forms"]["nabla_w"] == "3/1"
    code, rep = report(capsys, "kms", "inputs/hnn_profinite.recipe", "--max-grade", "2")
    assert code == 0 and rep["results"]["passed"]


def test_incomplete_table_exits_3(capsys):
    code, rep = report(capsys, "hecke", "inputs/hnn_profinite.recipe", "--max-grade", "2")
    assert code == 3 and not rep["complete"] and rep["results"]["unresolved"]


def test_inconclusive_faithfulness_exits_3(capsys):
    code, _ = report(capsys, "faithful", "inputs/su2_so3.recipe", "--max-grade", "6")
    assert code == 3


def test_planted_defect_exits_2(capsys, tmp_path):
    doc = json.loads((ROOT / "inputs/ring_s3.json").read_text())
    entry = next(e for e in doc["fusion"] if e["left"] == "(12)" and e["right"] == "(23)")
    entry["decomp"] = [["e", 1]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "validate", str(bad), "--max-grade", "0")
    assert code == 2 and err


@pytest.mark.parametrize("argv", [
    ["cosets", "missing.json"],
    ["operator", "inputs/ring_s3.json", "inputs/sub_12.json", "--tau", "D:nope"],
    ["build", "inputs/su2_so3.recipe"],
    ["theta-domains", "inputs/ring_s3.json"],
    ["qdouble", "Q9"],
])
def test_bad_input_exits_4(capsys, argv):
    assert run(capsys, *argv)[0] == 4


def test_malformed_json_exits_4(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "cosets", str(p))
    assert code == 4 and "x.json" in err


def test_qdouble_and_suite(capsys):
    code, rep = report(capsys, "qdouble", "S3")
    assert code == 0 and rep["results"]["characters"]["dimension"] == 3
    code, rep = report(capsys, "qdouble", "inputs/group_s3.json")
    assert code == 0 and rep["results"]["characters"]["dimension"] == 3
    code, rep = report(capsys, "suite", "inputs/su2_so3.recipe", "--max-grade", "8")
    assert code == 0 and rep["results"]["passed"]


def test_theta_domains_and_rt_scan(capsys):
    code, rep = report(capsys, "theta-domains", "inputs/hnn_profinite.recipe")
    assert code == 0 and rep["results"]["intersection"] == ["1"]
    code, rep = report(capsys, "rt-scan", "inputs/free_z_s3.recipe", "--max-grade", "4", "--beta", "Z:-1")
    assert code == 0 and "Z:-1" in rep["results"]["lower_bounds"]
