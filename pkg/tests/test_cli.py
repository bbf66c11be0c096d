import json

import pytest

from hfl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_strata_examples(capsys):
    code, out, _ = run(capsys, "strata", "--genus", "2", "--zeros", "3,1")
    rep = json.loads(out)
    assert code == 0 and [s["dim"] for s in rep["strata"]] == [3, 2]
    code, out, _ = run(capsys, "strata", "--genus", "2", "--zeros", "1,1,1,1")
    assert code == 0 and len(json.loads(out)["strata"]) == 1
    code, _, err = run(capsys, "strata", "--genus", "2", "--zeros", "3,2")
    assert code == 2 and "4g-4" in err


def test_strata_dot_and_text(capsys):
    code, out, _ = run(capsys, "strata", "--genus", "2", "--zeros", "3,1", "--dot")
    assert code == 0 and '"0,0" -> "1,0"' in out
    code, out, _ = run(capsys, "strata", "--genus", "2", "--zeros", "3,1", "--format", "text")
    assert "irreducible" in out


def test_canon_examples(capsys):
    code, out, _ = run(capsys, "canon", "--d", "5", "--a", "v=1;t=5;4", "--b", "v=0;t=5;2,0,3")
    rep = json.loads(out)
    assert code == 0 and rep["stratum"] == 0 and rep["u"] == ["2", "-3"]
    assert rep["chart_images"]["N(1,0)"]["normalized"] == ["1", "2", "3"]
    code, out, _ = run(capsys, "canon", "--d", "5", "--a", "0", "--b", "v=2;t=5;1")
    assert code == 0 and json.loads(out)["bottom_stratum_point"] is True
    code, _, err = run(capsys, "canon", "--d", "4", "--a", "0", "--b", "1")
    assert code == 2 and "--even" in err
    code, _, err = run(capsys, "canon", "--d", "5", "--a", "v=0;t=5;1", "--b", "v=0;t=5;1")
    assert code == 2 and "parity" in err


def test_canon_even(capsys):
    code, out, _ = run(capsys, "canon", "--even", "--d", "2", "--a", "v=1;t=4;1", "--b", "1")
    rep = json.loads(out)
    assert code == 0 and rep["extension_datum"] == "v=0;t=2;1,2"


def test_atlas_and_higgs(capsys):
    code, out, _ = run(capsys, "heck-atlas", "--d", "5")
    rep = json.loads(out)
    assert code == 0 and rep["order5_sign_check"]["printed_sign_matches"] is False
    code, out, _ = run(capsys, "higgs", "--d", "5", "--a", "v=3;t=14;1", "--b", "1")
    rep = json.loads(out)
    assert code == 0 and rep["oracle_agrees"] and rep["eigen_twist"] == [0, 0]
    code, out, _ = run(capsys, "higgs", "--matrix", "v=2;t=8;-1;v=0;t=8;1,0,-1;v=2;t=8;1;v=2;t=8;1",
                       "--lambda", "1")
    rep = json.loads(out)
    assert code == 0 and rep["D"] == 0 and rep["companion_ok"]


def test_realpoints(capsys):
    code, out, _ = run(capsys, "realpoints", "--genus", "3", "--zeros", "6,1,1")
    rep = json.loads(out)
    assert rep["total_real_points"] == 448 and rep["printed_closed_form"] == 576
    code, _, _ = run(capsys, "realpoints", "--genus", "3", "--zeros", "2,2,2,2")
    assert code == 2


def test_oracle_suites(capsys):
    assert run(capsys, "oracle", "--suite", "counting", "--seed", "7")[0] == 0
    assert run(capsys, "oracle", "--suite", "glue-order5", "--cases", "200")[0] == 0
    assert run(capsys, "oracle", "--suite", "nosuch")[0] == 2


def test_oracle_deterministic(capsys):
    a = run(capsys, "oracle", "--suite", "conjugation", "--seed", "3", "--cases", "20")[1]
    b = run(capsys, "oracle", "--suite", "conjugation", "--seed", "3", "--cases", "20")[1]
    assert a == b and json.loads(a)["seed"] == 3


def test_usage_errors(capsys):
    assert main([]) == 2
    assert run(capsys, "strata", "--genus", "2", "--zeros", "x")[0] == 2
