import json
import subprocess
import sys

import pytest

from hermcover.cli import SUITES, UsageError, VerificationSuiteConfig, main

Q2 = "normalized_q2_n1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def perturbed(tmp_path):
    path = tmp_path / "perturbed.curve"
    path.write_text("p = 2\ne = 1\nn = 1\nalpha0 = 1\nc = 0 1\n")
    return str(path)


def test_info_q2(capsys):
    code, out, _ = run(capsys, "info", "--spec", Q2)
    assert code == 0
    rep = json.loads(out)
    inv = rep["invariants"]
    assert rep["schema_version"] == 1
    assert (inv["genus"], inv["p_rank"], inv["aut_order"], inv["arc_k"], inv["arc_d"]) == (37, 21, 288, 99, 12)


def test_info_q3(capsys, tmp_path):
    spec = tmp_path / "q3.curve"
    spec.write_text("p = 3\ne = 1\nn = 1\nc = 1\n")
    code, out, _ = run(capsys, "info", "--spec", str(spec), "--format", "text")
    assert code == 0
    assert "invariants.genus: 451" in out and "invariants.p_rank: 208" in out
    assert "invariants.aut_order: 7776" in out and "invariants.arc_k: 1948" in out and "invariants.arc_d: 36" in out


@pytest.mark.parametrize("text", ["p = 4\ne = 1\nn = 1\nc = 1\n", "p = 2\nn = 1\nc = 1\n", "garbage\n"])
def test_malformed_spec(capsys, tmp_path, text):
    spec = tmp_path / "bad.curve"
    spec.write_text(text)
    code, _, err = run(capsys, "info", "--spec", str(spec))
    assert code == 2 and "error" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "verify", "--spec", Q2, "--suite", "genus,bogus")[0] == 2
    assert run(capsys, "info", "--spec", str(tmp_path / "missing.curve"))[0] == 2
    assert run(capsys, "info", "--spec", Q2, "--max-field-order", "8")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "info")[0] == 2
    assert run(capsys, "info", "--spec", Q2, "--threads", "0")[0] == 2


def test_suite_dependency_closure(tmp_path):
    cfg = VerificationSuiteConfig(tmp_path, ("galois", "genus"))
    assert cfg.suites == ("genus", "aut", "galois")
    assert VerificationSuiteConfig(tmp_path, ("exactseq",)).suites == ("aut", "exactseq")
    with pytest.raises(UsageError):
        VerificationSuiteConfig(tmp_path, ("nope",))


def _verify(capsys, *extra):
    code, out, _ = run(capsys, "verify", *extra)
    return code, json.loads(out)


def test_full_suite_q2(capsys):
    code, rep = _verify(capsys, "--spec", Q2)
    assert rep["suites"] == list(SUITES)
    by_name = {c["name"]: c for c in rep["checks"]}
    for c in rep["checks"]:
        assert c["paper_anchor"] and c["status"] in ("pass", "fail", "skip")
        if c["name"] != "galois_generation":
            assert c["status"] == "pass", c
    gen = by_name["galois_generation"]
    assert (gen["data"]["generated_order"], gen["data"]["group_order"]) == (144, 288)
    assert gen["status"] == "fail" and code == 1 and rep["status"] == "fail"


@pytest.mark.xfail(strict=True, reason="the deck groups of the Galois points generate an index-2 subgroup at q=2")
def test_full_suite_q2_all_pass(capsys):
    code, rep = _verify(capsys, "--spec", Q2)
    assert code == 0


def test_suite_subset_passes(capsys):
    code, rep = _verify(capsys, "--spec", Q2, "--suite", "singularities,genus,prank,points,arc,weierstrass,exactseq")
    assert code == 0 and rep["status"] == "pass"
    assert rep["suites"] == ["singularities", "genus", "prank", "aut", "exactseq", "points", "arc", "weierstrass"]


def test_frobenius_on_perturbed_c(capsys, perturbed):
    code, rep = _verify(capsys, "--spec", perturbed, "--suite", "frobenius")
    assert code == 0
    checks = {c["name"]: c for c in rep["checks"]}
    assert checks["frobenius_consistency"]["status"] == "pass"
    assert checks["frobenius_consistency"]["data"]["verdict"] == "classical"
    assert checks["frobenius_window"]["status"] == "skip"


def test_reports_are_deterministic(capsys, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert run(capsys, "verify", "--spec", Q2, "--suite", "aut,arc", "--out", str(path))[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_formats(capsys):
    code, out, _ = run(capsys, "verify", "--spec", Q2, "--suite", "genus", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "suite,name,status,paper_anchor"
    assert out.splitlines()[1].startswith("genus,genus,pass,")
    code, out, _ = run(capsys, "verify", "--spec", Q2, "--suite", "genus", "--format", "text")
    assert out.splitlines()[-1] == "overall: pass"


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--spec", Q2)
    counts = json.loads(out)["counts"]
    assert code == 0 and (counts["places"], counts["plane_points"]) == (108, 99)


def test_group_dump(capsys, tmp_path):
    path = tmp_path / "g.txt"
    assert run(capsys, "group", "dump", "--spec", Q2, "--out", str(path))[0] == 0
    lines = path.read_text().splitlines()
    assert len(lines) == 288 and all(len(l.split()) == 9 for l in lines)


def test_arc_profile(capsys):
    code, out, _ = run(capsys, "arc", "profile", "--spec", Q2, "--format", "csv")
    assert code == 0 and out.splitlines()[-1] == "12,8"
    code, out, _ = run(capsys, "arc", "profile", "--spec", Q2)
    rep = json.loads(out)
    assert rep["arc"]["k"] == 99 and rep["arc"]["d"] == 12 and not rep["arc"]["complete"]


def test_precision_flag(capsys):
    code, rep = _verify(capsys, "--spec", Q2, "--suite", "weierstrass", "--precision", "4")
    assert code == 0
    assert rep["checks"][0]["data"]["orders"] == [7] * 10


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hermcover", "info", "--spec", Q2, "--format", "csv"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "invariants.genus,37" in res.stdout
