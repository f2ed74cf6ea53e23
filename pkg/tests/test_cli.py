import json

import pytest

from app import cli
from app.core.config import settings
from app.core.exceptions import OracleMismatchError
from app.models.schemas import ReportDocument
from app.services.report_service import render_json


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_classify_a3(capsys):
    code, out = run(capsys, "classify", "--family", "A", "--rank", "3")
    assert code == cli.EXIT_OK
    assert "cominuscule: {1, 2, 3}" in out
    assert "A(1)_3" in out


def test_classify_b4_as_json(capsys):
    code, out = run(capsys, "classify", "--family", "B", "--rank", "4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["cominuscule"] == [1]
    assert data["minuscule"] == [4]
    assert data["nodes"][3]["class"] == "minuscule-only"
    assert data["twisted"] == "D(2)_5"


def test_classify_single_node(capsys):
    code, out = run(capsys, "classify", "--family", "C", "--rank", "3", "--node", "1")
    assert code == 0
    assert out.strip() == "C3 node 1: minuscule-only on A(2)_5"


def test_classify_prints_diagrams(capsys):
    code, out = run(capsys, "classify", "--family", "C", "--rank", "2", "--diagrams", "dot")
    assert code == 0
    assert 'digraph "A(2)_3"' in out
    assert 'digraph "C(1)_2"' in out


def test_verify_e7_as_json(capsys):
    code, out = run(capsys, "verify", "--family", "E", "--rank", "7", "--node", "6", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["invocation"][:1] == ["verify"]
    case = data["cases"][0]
    assert case["case"]["class"] == "cominuscule"
    assert case["case"]["affine"] == "untwisted-affine"
    verdicts = {check["lemma"]: check["verdict"] for check in case["checks"]}
    assert verdicts == {
        "iso": "pass",
        "bp": "pass",
        "phi": "pass",
        "split": "not-applicable",
        "weights": "pass",
        "dimension": "pass",
    }
    dimension = case["checks"][-1]
    assert dimension["metrics"] == {"dim_x": 27, "length_w0": 27, "length_wm": 27, "length_y": 54}
    assert data["summary"] == {"pass": 5, "fail": 0, "not-applicable": 1}


def test_verify_split_witness(capsys):
    code, out = run(capsys, "verify", "--family", "C", "--rank", "2", "--node", "1", "--lemma", "split")
    assert code == 0
    assert "sum=[0,2,1]" in out
    assert "pass: 1  fail: 0  not-applicable: 0" in out


def test_phi_not_applicable_for_b3_node_2(capsys):
    argv = ["verify", "--family", "B", "--rank", "3", "--node", "2", "--lemma", "phi", "--format", "json"]
    code, out = run(capsys, *argv)
    assert code == 0
    check = json.loads(out)["cases"][0]["checks"][0]
    assert check["verdict"] == "not-applicable"
    assert check["witness"] == {"root": "[0,1,2,2]", "coefficient": 2}


def test_failed_check_exits_1(capsys):
    code, out = run(capsys, "verify", "--family", "B", "--rank", "3", "--node", "2", "--lemma", "iso")
    assert code == cli.EXIT_FAILED_CHECK
    assert "fail: 1" in out


def test_invalid_type_exits_2(capsys):
    code = cli.main(["classify", "--family", "D", "--rank", "3"])
    assert code == cli.EXIT_REJECTED
    assert "D3" in capsys.readouterr().err


def test_invalid_node_exits_2(capsys):
    assert cli.main(["verify", "--family", "A", "--rank", "3", "--node", "7"]) == cli.EXIT_REJECTED


def test_invalid_sweep_rank_exits_2():
    assert cli.main(["sweep", "--max-rank", "12"]) == cli.EXIT_REJECTED


def test_unknown_flags_are_usage_errors():
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["verify", "--family", "A", "--rank", "3"])
    assert excinfo.value.code != 0
    with pytest.raises(SystemExit):
        cli.main(["classify", "--family", "H", "--rank", "3"])


def test_sweep_output_is_deterministic(capsys):
    argv = ["sweep", "--max-rank", "8", "--format", "json"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    assert first[0] == 0


def test_sweep_json_parses_back_into_a_report(capsys):
    _, out = run(capsys, "sweep", "--max-rank", "2", "--format", "json")
    document = ReportDocument.model_validate_json(out)
    assert document.invocation == ["sweep", "--max-rank", "2", "--format", "json"]
    assert [case.case.node for case in document.cases[:3]] == [1, 1, 2]
    assert render_json(document) == out.rstrip("\n")


def test_oracle_a3(capsys):
    code, out = run(capsys, "oracle", "--type", "A3")
    assert code == 0
    assert "|W| = 24" in out
    assert "engine agrees on all" in out


def test_oracle_json_is_a_single_list(capsys, monkeypatch):
    monkeypatch.setattr(settings, "ORACLE_TYPES", ["A3", "B3"])
    code, out = run(capsys, "oracle", "--format", "json")
    assert code == cli.EXIT_OK
    reports = json.loads(out)
    assert [report["diagram"] for report in reports] == ["A3", "B3"]
    assert [report["group_order"] for report in reports] == [24, 48]


def test_internal_invariant_exits_3(capsys, monkeypatch):
    def broken(diagram):
        raise OracleMismatchError("lengths", "[1 2]: engine 2, BFS 3")

    monkeypatch.setattr(cli, "cross_check", broken)
    code = cli.main(["oracle", "--type", "A3"])
    assert code == cli.EXIT_INVARIANT
    assert "oracle mismatch in lengths" in capsys.readouterr().err
