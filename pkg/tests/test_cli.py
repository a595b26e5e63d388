import json
import subprocess
import sys
from pathlib import Path

import pytest

from dobrakov.cli import SCHEMA, WORKERS_ENV, main

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def verdicts(report):
    return {p["name"]: p["verdict"] for p in report["properties"]}


def test_check_additive_sample(capsys):
    code, rep = run_json(capsys, "check", SPECS / "additive.spec")
    assert code == 0 and rep["exit_status"] == 0
    assert rep["schema"] == SCHEMA
    assert rep["classification"]["label"] == "D_a"
    assert set(verdicts(rep).values()) == {"holds"}


def test_check_malformed_spec(capsys, tmp_path):
    bad = tmp_path / "bad.spec"
    bad.write_text("[instance]\nmodel = finite\nflavour = odd\n")
    code, out, err = run(capsys, "check", bad)
    assert code == 2 and out == ""
    assert "line 3" in err and "unknown key" in err


def test_check_monotonicity_violation(capsys):
    code, rep = run_json(capsys, "check", SPECS / "nonmonotone.spec")
    assert code == 1
    mono = next(p for p in rep["properties"] if p["name"] == "monotone")
    assert mono["verdict"] == "fails"
    assert mono["witness"]["A"] == "{0}" and mono["witness"]["B"] == "{0,1}"


def test_check_on_non_additive_instance_exits_zero(capsys):
    code, rep = run_json(capsys, "check", SPECS / "positive.spec")
    assert code == 0
    assert rep["classification"]["label"] == "D_s"
    assert {p["name"]: p["verdict"] for p in rep["informational"]}["additive"] == "fails"


def test_extend_worked_example(capsys):
    code, rep = run_json(capsys, "extend", SPECS / "worked_null.spec")
    assert code == 0
    ext = rep["extension"]
    assert len(ext["r_zero"]) == 8
    assert ext["witnesses"]["{1}"] == ["{}", "{1,2}"]
    assert ext["mu_star"]["{0,1}"] == "(1)"


def test_extend_strictly_positive(capsys):
    code, rep = run_json(capsys, "extend", SPECS / "positive.spec")
    assert code == 0
    assert rep["extension"]["r_zero"] == rep["extension"]["ring"]


def test_extend_rejects_dyadic_model(capsys):
    code, _, err = run(capsys, "extend", SPECS / "sqrt_third.spec")
    assert code == 2 and "extension requires finite model" in err


def test_choquet_command(capsys, tmp_path):
    code, rep = run_json(capsys, "choquet", SPECS / "additive.spec", "{0,1}")
    assert code == 0 and rep["choquet"]["value"] == "(3)"
    zero = tmp_path / "zero.spec"
    zero.write_text((SPECS / "additive.spec").read_text().replace("f = [2, 1]", "f = [0, 0]"))
    code, rep = run_json(capsys, "choquet", zero, "{0,1}")
    assert code == 0 and rep["choquet"]["value"] == "(0)"
    code, _, err = run(capsys, "choquet", SPECS / "worked_null.spec", "{0}")
    assert code == 2 and "missing density" in err


def test_dyadic_command(capsys):
    code, rep = run_json(capsys, "dyadic", SPECS / "sqrt_third.spec")
    assert code == 0
    conv = next(p for p in rep["properties"] if p["name"] == "inner_refinement_convergence")
    assert int(conv["details"]["depth"]) <= 25
    code, rep = run_json(capsys, "dyadic", SPECS / "identity_half.spec")
    conv = next(p for p in rep["properties"] if p["name"] == "inner_refinement_convergence")
    assert code == 0 and conv["details"]["depth"] == 1
    code, rep = run_json(capsys, "dyadic", SPECS / "sqrt_third.spec", "--tol", "0")
    conv = next(p for p in rep["properties"] if p["name"] == "inner_refinement_convergence")
    assert code == 1 and conv["verdict"] == "fails" and float(conv["witness"]["residual"]) > 0


def test_flags_are_applied(capsys):
    code, rep = run_json(capsys, "check", SPECS / "positive.spec", "--eps-grid", "1, 1/10", "--seed", "5")
    chain = next(p for p in rep["properties"] if p["name"] == "chained_union_bound")
    assert code == 0 and chain["details"]["seed"] == 5
    code, rep = run_json(capsys, "dyadic", SPECS / "sqrt_third.spec", "--max-depth", "3")
    assert code == 1 and rep["dyadic"]["max_depth"] == 3
    code, _, err = run(capsys, "check", SPECS / "positive.spec", "--eps-grid", "a,b")
    assert code == 2 and "eps-grid" in err


def test_reports_are_deterministic_across_worker_counts(capsys, monkeypatch):
    _, first = run(capsys, "check", SPECS / "positive.spec", "--json")[:2]
    monkeypatch.setenv(WORKERS_ENV, "4")
    _, second = run(capsys, "check", SPECS / "positive.spec", "--json")[:2]
    assert first == second
    monkeypatch.setenv(WORKERS_ENV, "many")
    code, _, err = run(capsys, "check", SPECS / "positive.spec")
    assert code == 2 and WORKERS_ENV in err


def test_text_output(capsys):
    code, out, _ = run(capsys, "extend", SPECS / "worked_null.spec")
    assert code == 0
    assert "classification: D_a" in out and "{1}: inner {}, outer {1,2}" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dobrakov", "check", str(SPECS / "additive.spec")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "exit status 0" in proc.stdout


@pytest.mark.parametrize("spec", sorted(SPECS.glob("*.spec")), ids=lambda p: p.name)
def test_every_bundled_spec_runs(capsys, spec):
    command = "dyadic" if "model = dyadic" in spec.read_text() else "check"
    code, rep = run_json(capsys, command, spec)
    assert code == (1 if spec.name == "nonmonotone.spec" else 0)
