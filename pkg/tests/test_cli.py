import json
import subprocess
import sys

import pytest

from rmx.cli import main

M61 = 2305843009213693951


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_formula_eval_rational(capsys):
    code, out, _ = run_cli(["formula", "--name", "propA.a12", "--series", "so", "--n", "9",
                            "--qh", "3/2", "--u", "25", "--field", "rational"], capsys)
    assert code == 0
    from fractions import Fraction
    v = Fraction(out.strip())
    # independent evaluation
    from rmx.catalog import catalog_get
    from rmx.formulas import eval_formula
    from rmx.points import EvalPoint
    from rmx.field import RationalField
    pt = EvalPoint("so", 9, RationalField(), Fraction(3, 2), Fraction(5))
    assert v == eval_formula(catalog_get("propA.a12"), pt)


def test_formula_perfect_square_q(capsys):
    code, out, _ = run_cli(["formula", "--name", "loop_delta", "--series", "so", "--n", "9",
                            "--q", "9/4", "--u", "4", "--field", "rational"], capsys)
    assert code == 0


def test_formula_non_square_q_refused(capsys):
    code, out, err = run_cli(["formula", "--name", "propA.a12", "--series", "so", "--n", "9",
                              "--q", "3/2", "--u", "25", "--field", "rational"], capsys)
    assert code == 2


def test_formula_unknown_name(capsys):
    code, _, err = run_cli(["formula", "--name", "nosuch", "--series", "so", "--n", "9",
                            "--qh", "3/2", "--uh", "2", "--field", "rational"], capsys)
    assert code == 2
    assert "propA.a12" in err


def test_formula_c33_at_u_one(capsys):
    code, out, _ = run_cli(["formula", "--name", "propC.c33", "--series", "so", "--n", "9",
                            "--qh", "3/2", "--u", "1", "--field", "rational"], capsys)
    assert code == 0
    from fractions import Fraction
    from rmx.brackets import BracketTriple, bracket_eval
    from rmx.points import EvalPoint
    from rmx.field import RationalField
    pt = EvalPoint("so", 9, RationalField(), Fraction(3, 2), Fraction(1))
    expect = bracket_eval(BracketTriple(0, 0, 4), pt) * bracket_eval(BracketTriple(1, 0, -4), pt)
    assert Fraction(out.strip()) == expect  # -[2][-1][n/2-2] = +[2][n/2-2]


def test_usage_error_small_n(capsys):
    code, _, _ = run_cli(["verify-rep", "--series", "so", "--n", "2"], capsys)
    assert code == 2


def test_usage_error_odd_sp(capsys):
    code, _, _ = run_cli(["verify-rep", "--series", "sp", "--n", "9"], capsys)
    assert code == 2


def test_fuse_check_bad_checks(capsys):
    code, _, _ = run_cli(["fuse-check", "--series", "so", "--n", "9",
                          "--checks", "nosuch"], capsys)
    assert code == 2


def test_verify_rep_report(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code, _, _ = run_cli(["verify-rep", "--series", "so", "--n", "5", "--points", "2",
                          "--probes", "3", "--seed", "5", "--out", str(out)], capsys)
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["summary"]["fail"] == 0
    assert rep["tool"]["name"] == "rmx"
    assert rep["backend"] == f"prime:{M61}"
    assert all("paper_anchor" in c for c in rep["checks"])


def test_verify_rep_negative_control(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code, _, _ = run_cli(["verify-rep", "--series", "so", "--n", "5", "--points", "1",
                          "--probes", "2", "--seed", "5", "--negative-control",
                          "--out", str(out)], capsys)
    assert code == 1


def test_determinism_byte_identical(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    args = ["verify-rep", "--series", "so", "--n", "5", "--points", "2", "--probes", "3",
            "--seed", "9"]
    assert run_cli(args + ["--out", str(a)], capsys)[0] == 0
    assert run_cli(args + ["--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_env_seed_fallback(tmp_path, capsys, monkeypatch):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    monkeypatch.setenv("RMX_SEED", "9")
    args = ["verify-rep", "--series", "so", "--n", "5", "--points", "1", "--probes", "2"]
    run_cli(args + ["--out", str(a)], capsys)
    monkeypatch.delenv("RMX_SEED")
    run_cli(args + ["--seed", "9", "--out", str(b)], capsys)
    assert json.loads(a.read_text())["seeds"] == json.loads(b.read_text())["seeds"]


def test_rational_backend_verify(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run_cli(["verify-rep", "--series", "so", "--n", "3", "--points", "1",
                          "--probes", "2", "--field", "rational", "--out", str(out)], capsys)
    assert code == 0


@pytest.mark.slow
def test_fuse_check_matsumoto(tmp_path, capsys):
    out = tmp_path / "f.json"
    code, _, _ = run_cli(["fuse-check", "--series", "so", "--n", "9",
                          "--checks", "matsumoto,idempotent", "--probes", "4",
                          "--seed", "7", "--out", str(out)], capsys)
    assert code == 0
    rep = json.loads(out.read_text())
    names = [c["name"] for c in rep["checks"]]
    assert any("matsumoto" in n for n in names)
    assert any("poly-in-R" in n for n in names)


@pytest.mark.slow
def test_fuse_check_negative_control(tmp_path, capsys):
    out = tmp_path / "f.json"
    code, _, _ = run_cli(["fuse-check", "--series", "so", "--n", "9",
                          "--checks", "ybe,unitarity", "--probes", "2", "--pairs", "1",
                          "--seed", "7", "--negative-control", "--out", str(out)], capsys)
    assert code == 1
