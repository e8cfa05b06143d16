import io
import json
import subprocess
import sys

import pytest

from kframes.cli import BUDGET, FAIL, OK, USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- golden outputs ------------------------------------------------------------------

def test_build_golden(capsys):
    code, out, _ = run(capsys, "build", "rect(1,2)")
    assert code == OK
    assert out == (
        '{\n'
        ' "alphabet": ["1", "2"],\n'
        ' "name": "rect(1,2)",\n'
        ' "relations": {\n'
        '  "1": [\n'
        '   ["(0,0)", "(0,0)"],\n'
        '   ["(0,1)", "(0,1)"]\n'
        '  ],\n'
        '  "2": [\n'
        '   ["(0,0)", "(0,0)"],\n'
        '   ["(0,0)", "(0,1)"],\n'
        '   ["(0,1)", "(0,0)"],\n'
        '   ["(0,1)", "(0,1)"]\n'
        '  ]\n'
        ' },\n'
        ' "worlds": ["(0,0)", "(0,1)"]\n'
        '}\n')


def test_build_to_file_then_load(capsys, tmp_path):
    path = tmp_path / "t.json"
    assert run(capsys, "build", "tack2(2,2)", "-o", str(path), "--name", "tack")[0] == OK
    assert json.loads(path.read_text())["name"] == "tack"
    code, out, _ = run(capsys, "check", str(path), "height")
    assert (code, out) == (OK, "2\n")


@pytest.mark.parametrize("frame,cond,expected", [
    ("rect(2,2)", "height", "1\n"),
    ("rect(2,2)", "pretrans-index", "2\n"),
    ("chain(3)", "max-cluster", "1\n"),
    ("tack1(2)", "terminal", "{top}\n"),
    ("saw(1)", "clusters", "{u}\n{v0}\n{w0}\n{w1}\n"),
])
def test_check_values(capsys, frame, cond, expected):
    assert run(capsys, "check", frame, cond)[:2] == (OK, expected)


def test_check_verdicts(capsys):
    assert run(capsys, "check", "rect(2,2)", "commute")[:2] == (OK, "PASS\n")
    code, out, _ = run(capsys, "check", "rect(2,2)", "rp-prod", "--m", "1")
    assert code == FAIL and out == "FAIL RP_1(1,1) witness: (0,0) -> (0,1) -> (1,1)\n"
    assert run(capsys, "check", "rect(2,2)", "rp-prod", "--m", "2")[0] == OK
    code, out, _ = run(capsys, "check", "cluster(2)", "mckinsey")
    assert code == FAIL and out == "FAIL mckinsey(1) witness: 0\n"
    assert run(capsys, "check", "rect(2,2)", "commute", "--a", "1")[0] == USAGE


def test_mc(capsys):
    code, out, _ = run(capsys, "mc", "rect(2,2)", "<1>p0", "--val", "p0=(1,1)")
    assert (code, out) == (OK, "{(0,1), (1,1)}\n")
    code, out, _ = run(capsys, "mc", "rect(2,2)", "<1>p0", "--val", "p0=3")
    assert out == "{(0,1), (1,1)}\n"
    assert run(capsys, "mc", "rect(2,2)", "<1>p0", "--val", "q=1")[0] == USAGE
    assert run(capsys, "mc", "rect(2,2)", "<1>p0", "--val", "p0=(9,9)")[0] == USAGE


def test_valid(capsys):
    assert run(capsys, "valid", "cluster(2)", "p0 -> <1>p0")[:2] == (OK, "VALID\n")
    code, out, _ = run(capsys, "valid", "saw(2)", "<d><l>p0 -> <d><r>p0")
    assert code == FAIL and out == "INVALID at u: p0={w0}\n"


def test_valid_budget_and_methods(capsys):
    code, _, err = run(capsys, "valid", "cluster(5)", "p0 & p1 & p2 & p3 & p4 -> p0")
    assert code == BUDGET and "refused" in err
    code, out, _ = run(capsys, "valid", "cluster(5)", "p0 & p1 & p2 & p3 & p4 -> p0",
                       "--method", "sat")
    assert (code, out) == (OK, "VALID\n")
    assert run(capsys, "valid", "cluster(5)", "p0 & p1 & p2 & p3 & p4 -> p0",
               "--budget", "30")[0] == OK


def test_valid_rejects_bad_formulas(capsys):
    code, _, err = run(capsys, "valid", "rect(2,2)", "<3>p0")
    assert code == USAGE and "unknown modality label '3'" in err
    assert run(capsys, "valid", "rect(2,2)", "p0 ->")[0] == USAGE


def test_tune(capsys):
    code, out, _ = run(capsys, "tune", "chain(3,strict)", "--partition", "{0,1,2}")
    assert code == OK
    assert out.splitlines()[:3] == ["{0}", "{1}", "{2}"]
    assert out.splitlines()[3].startswith("# input 1 blocks, output 3 blocks")
    same = run(capsys, "tune", "chain(3,strict)", "--partition", "{0,1,2}", "--method", "worklist")
    assert same[1].splitlines()[:3] == out.splitlines()[:3]
    assert run(capsys, "tune", "chain(3)", "--partition", "0,1")[0] == USAGE


def test_pmorph(capsys):
    code, out, _ = run(capsys, "pmorph", "rect(4,4)", "rect(2,2)")
    assert code == OK and out.startswith("MAP (0,0)->") and "verified" in out
    assert run(capsys, "pmorph", "chain(2)", "chain(3)")[:2] == (FAIL, "NONE\n")
    code, out, _ = run(capsys, "pmorph", "rect(4,4)", "rect(2,2)", "--budget", "2")
    assert code == BUDGET and out.startswith("BUDGET EXHAUSTED")


def test_dot_and_profile(capsys, tmp_path):
    code, out, _ = run(capsys, "dot", "chain(2)")
    assert code == OK and out.startswith('digraph "chain(2)" {')
    assert run(capsys, "dot", "chain(2)", "-o", str(tmp_path / "c.dot"))[0] == OK
    assert (tmp_path / "c.dot").read_text() == out
    assert run(capsys, "profile", "cluster(3)", "--n-max", "3")[:2] == (OK, "1 2 3\n")
    assert run(capsys, "profile", "cluster(9)", "--budget", "100")[0] == BUDGET


def test_usage_errors(capsys):
    code, _, err = run(capsys, "check", "clusterx(2)", "height")
    assert code == USAGE and "position 0" in err
    assert run(capsys, "check", "rect(2,2)", "no-such-condition")[0] == USAGE
    assert run(capsys)[0] == USAGE


def test_stdin_frame(capsys, monkeypatch):
    doc = '{"alphabet": ["1"], "worlds": 2, "relations": {"1": [[0, 1]]}}'
    monkeypatch.setattr(sys, "stdin", io.StringIO(doc))
    assert run(capsys, "check", "-", "height")[:2] == (OK, "2\n")


def test_verify_small_subset(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--scale", "small", "--only", "prop.height-additivity",
                       "--out", str(tmp_path))
    assert code == OK
    assert len(out.splitlines()) == 1 and out.startswith("prop.height-additivity\tPASS\t")
    assert (tmp_path / "report.tsv").read_text() == out
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["passed"] is True and report["checks"][0]["status"] == "PASS"
    assert run(capsys, "verify", "--only", "no.such-check")[0] == USAGE


def test_verify_figures(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "--scale", "small", "--only",
                     "prop.zigzag-irreducible-path", "--figures", str(tmp_path))
    assert code == OK
    for name in ("rp_growth.png", "tunability_profiles.png"):
        assert (tmp_path / name).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_outputs_are_deterministic(capsys):
    for argv in (["build", "tack2(2,3)"], ["tune", "rect(2,2)", "--partition", "{0,1}"],
                 ["valid", "rect(2,2)", "<1>[2]p0 -> [2]<1>p0"]):
        assert run(capsys, *argv) == run(capsys, *argv)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kframes", "check", "rect(2,3)", "height"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"
