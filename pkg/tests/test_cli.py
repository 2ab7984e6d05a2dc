from __future__ import annotations

import json

import pytest

from gbent import analyze, read_table, write_table
from gbent.cli import main
from gbent.presets import z25_function


@pytest.fixture
def z25_file(tmp_path):
    path = tmp_path / "f.txt"
    write_table(z25_function(), path)
    return path


def test_analyze_json(z25_file, capsys):
    assert main(["analyze", str(z25_file), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["is_gbent"] and not out["self_dual"] and out["regularity"] == "Regular"
    assert set(out) >= {"p", "k", "n", "spec", "xi_case", "mu", "dual_table", "failures"}


def test_analyze_exit_codes(tmp_path, capsys):
    zero = tmp_path / "zero.txt"
    zero.write_text("3 1\ndot:1\n0 0 0\n")
    assert main(["analyze", str(zero)]) == 1
    trunc = tmp_path / "trunc.txt"
    trunc.write_text("3 1\ndot:1\n0 0\n")
    assert main(["analyze", str(trunc)]) == 2
    assert "line 4" in capsys.readouterr().err
    assert main(["analyze", str(tmp_path / "missing.txt")]) == 2


def test_dual_round_trip(z25_file, tmp_path):
    d1, d2 = tmp_path / "d1.txt", tmp_path / "d2.txt"
    assert main(["dual", str(z25_file), "-o", str(d1)]) == 0
    assert main(["dual", str(d1), "-o", str(d2)]) == 0
    assert read_table(d2) == z25_function().reflect()


def test_dual_of_nonbent_dual_fails(tmp_path):
    f, d = tmp_path / "f.txt", tmp_path / "d.txt"
    assert main(["construct", "twisted", "--preset", "1", "-o", str(f)]) == 0
    assert main(["dual", str(f), "-o", str(d)]) == 0
    assert main(["dual", str(d), "-o", str(tmp_path / "dd.txt")]) == 1


@pytest.mark.parametrize("argv", [
    ["twisted", "--preset", "2"],
    ["selfdual", "--case", "3", "--preset", "3"],
    ["selfdual", "--preset", "4"],
    ["indirect", "--preset", "bad"],
    ["quadratic", "--p", "5", "--poly", "2,4,1", "--alpha", "z^3"],
    ["mm", "--p", "3", "--k", "2", "--g", "pow:1,scale:1"],
    ["twisted", "--p", "3", "--poly", "2,2,1", "--k", "2", "--alpha", "z", "--beta", "z", "--g", "0,1,2"],
])
def test_construct_sidecar_is_reproduced(argv, tmp_path):
    out = tmp_path / "c.txt"
    assert main(["construct", *argv, "-o", str(out)]) == 0
    sidecar = tmp_path / "c.txt.expected.json"
    assert main(["analyze", str(out), "--expect", str(sidecar)]) == 0


def test_construct_hypothesis_violation(tmp_path, capsys):
    argv = ["construct", "twisted", "--p", "5", "--poly", "2,4,1", "--alpha=-1", "--beta", "z", "--g", "0,0,0,0,0",
            "-o", str(tmp_path / "x.txt")]
    assert main(argv) == 3
    assert "(1, 0)" in capsys.readouterr().err


def test_transform_and_decompose(z25_file, capsys):
    assert main(["transform", str(z25_file), "--json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["table"]) == 25
    assert main(["transform", str(z25_file), "--naive"]) == 0
    capsys.readouterr()
    assert main(["decompose", "lambda", str(z25_file)]) == 0
    assert main(["decompose", "components", str(z25_file), "--json"]) == 0
    capsys.readouterr()
    assert main(["decompose", "dual-components", str(z25_file), "--budget", "10"]) == 4


def test_search_and_verify(capsys):
    assert main(["search-selfdual", "--p", "3", "--k", "2", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 0
    assert main(["verify-preset", "g3"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main(["verify-preset", "no-selfdual", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["pass"]


def test_degree_witness(tmp_path, capsys):
    out = tmp_path / "c.txt"
    main(["construct", "quadratic", "--p", "3", "--poly", "1,2,0,1", "--alpha", "z", "-o", str(out)])
    capsys.readouterr()
    assert main(["analyze", str(out), "--degree", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["nonquadratic_witness"] is None
    assert analyze(read_table(out)).is_gbent
