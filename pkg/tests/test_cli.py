import json
import sys
import tempfile
from pathlib import Path

SRC = str(Path(__file__).resolve().parents[1] / "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)

import pytest

from cli import main


def run(*argv):
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "report"
        code = main(list(argv) + ["--out", str(out)])
        text = out.read_text(encoding="utf-8") if out.exists() else ""
    return code, text


@pytest.mark.parametrize("argv", [
    ("verify", "--suite", "nosuchsuite"),
    ("h1", "--lambda", "banana", "--k", "5"),
    ("deform", "--n", "4", "--delta", "alg:1,2:+"),
])
def test_bad_arguments_exit_with_usage_code(argv):
    assert run(*argv)[0] == 2


def test_h1_at_singular_weight():
    code, text = run("h1", "--lambda", "0", "--k", "5")
    assert code == 0
    report = json.loads(text)
    assert report["command"] == "h1"
    assert report["summary"]["dimension"] == 1


def test_trivial_window():
    code, text = run("deform", "--n", "1")
    assert code == 0
    assert json.loads(text)["summary"]["parameters"] == 0


def test_small_generic_window_has_no_conditions():
    code, text = run("conditions", "--n", "4", "--order", "all")
    assert code == 0
    assert json.loads(text)["summary"]["generators"] == 0


def test_latex_output_is_a_standalone_document():
    code, text = run("h1", "--lambda", "1", "--k", "3", "--format", "latex")
    assert code == 0
    assert text.startswith("\\documentclass")
    assert text.rstrip().endswith("\\end{document}")


def test_runs_are_reproducible(capsys):
    argv = ["oracle", "--identity", "ddzero", "--trials", "2", "--seed", "4"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_window_at_integer_weight_with_mc_check():
    code, text = run("deform", "--n", "6", "--delta", "7", "--check-mc")
    assert code == 0
    report = json.loads(text)
    assert report["summary"]["l2_blocks"] == 3
    assert not [e for e in report["entries"] if e["status"] == "fail"]


def test_generic_window_of_seven_parameters():
    code, text = run("deform", "--n", "7")
    assert code == 0
    assert json.loads(text)["summary"]["parameters"] == 15


def test_h1_generic_k6_lists_algebraic_exceptions():
    code, text = run("h1", "--lambda", "generic", "--k", "6")
    assert code == 0
    exceptional = json.loads(text)["summary"]["exceptional"]
    assert set(exceptional.split(", ")) == {"alg:2,10,3:+", "alg:2,10,3:-"}


def test_h1_bol_weight_with_cocycle_is_flagged():
    code, text = run("h1", "--lambda", "-3", "--k", "7")
    assert code == 0
    assert any(e["status"] == "flag" for e in json.loads(text)["entries"])


@pytest.mark.parametrize("argv", [
    ("verify", "--suite", "transvectants"),
    ("verify", "--suite", "ddzero", "--trials", "2"),
    ("verify", "--suite", "omega-relations", "--n", "5"),
])
def test_verify_suites_exit_cleanly(argv):
    code, text = run(*argv)
    assert code == 0
    assert not [e for e in json.loads(text)["entries"] if e["status"] == "fail"]


def test_deform_reports_are_reproducible(capsys):
    assert main(["deform", "--n", "4"]) == 0
    first = capsys.readouterr().out
    assert main(["deform", "--n", "4"]) == 0
    assert capsys.readouterr().out == first
