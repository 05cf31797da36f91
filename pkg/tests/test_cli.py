import io
import json
import subprocess
import sys

import numpy as np
import pytest

from fuzzyre.cli import run
from fuzzyre.fixtures import load_fixture


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_build_godel_example():
    code, out, _ = call("build", "--structure", "godel", "--expr", "0.2((0.1(xy)*)*+y)", "--closure")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["states"]) == 6
    assert np.array_equal(doc["transitions"]["x"], load_fixture("godel_example_delta_x"))
    assert np.array_equal(doc["closure"]["R_A"], load_fixture("godel_example_R_closure"))


def test_build_from_fixture_nfa():
    code, out, _ = call("build", "--nfa-fixture", "min_dfa_x_plus_lx")
    assert code == 0
    assert json.loads(out)["tau"] == [0.0, 0.0, 1.0]


def test_eval_words():
    code, out, _ = call("eval", "--structure", "godel", "--expr", "x+0.5x", "--word", "x")
    assert (code, out) == (0, "x\t1\n")
    code, out, _ = call("eval", "--expr", "xx*+0.1x*", "--word", "eps", "--word", "", "--word", "q")
    assert out == "eps\t0.1\neps\t0.1\nq\t0\n"


def test_eval_table_mode():
    code, out, _ = call("eval", "--expr", "xx*+0.1x*", "--reduced", "--max-len", "2")
    assert out.splitlines() == ["eps\t0.1", "x\t1", "xx\t1"]


def test_eval_twelve_digits():
    code, out, _ = call("eval", "--structure", "product", "--expr", "0.3(0.3x)", "--word", "x")
    assert out == "x\t0.09\n"
    code, out, _ = call("eval", "--structure", "product", "--expr", "0.333333333333333(x)", "--word", "x")
    assert out == "x\t0.333333333333\n"


def test_eval_from_automaton_file(tmp_path):
    _, doc, _ = call("build", "--expr", "x+0.5x")
    path = tmp_path / "a.json"
    path.write_text(doc)
    code, out, _ = call("eval", "--automaton", str(path), "--word", "x")
    assert (code, out) == (0, "x\t1\n")
    code, _, err = call("eval", "--automaton", str(path), "--word", "y")
    assert code == 1 and "not in the automaton alphabet" in err


def test_minimize_report():
    code, out, err = call("minimize", "--expr", "xx*+0.1x*")
    assert code == 0
    assert json.loads(out)["tau"] == [0.1, 1.0]
    assert "states before: 4" in err and "states after: 2" in err and "{1,2,4}" in err


def test_export_formats():
    code, out, _ = call("export", "--format", "dot", "--stage", "nfa", "--expr", "x+0.5x")
    assert code == 0 and '[label="$1"]' in out
    code, out, _ = call("export", "--format", "dot", "--nfa-fixture", "min_dfa_x_plus_lx")
    assert '0->2 [label="x/1"];' in out
    code, out, _ = call("export", "--format", "json", "--stage", "minimized", "--expr", "x+0.5x")
    assert code == 0 and json.loads(out)["kind"] == "fuzzy"


def test_lift_outputs():
    code, out, _ = call("lift", "--expr", "(0.1x*)(yx+0.8y)*")
    assert out.splitlines() == ["$1x*(yx+$2y)*", "x\t1", "y\t1", "$1\t0.1", "$2\t0.8"]
    code, out, _ = call("lift", "--expr", "0.5x", "--json")
    assert json.loads(out) == {"alpha_r": "$1x", "x_alphabet": ["x"], "phi": {"x": 1.0, "$1": 0.5}}


def test_check():
    assert call("check", "--expr", "(x)(y)") == (0, "xy\n", "")


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--expr", "(x"],
        ["frobnicate"],
        [],
        ["build"],
        ["build", "--expr", "x", "--structure", "heyting"],
        ["build", "--expr", "0.5x", "--structure", "boolean"],
        ["eval", "--expr", "x"],
        ["build", "--nfa-fixture", "nope"],
        ["fuzz", "--cases", "-1"],
        ["build", "--expr", "x", "--tolerance", "-1"],
    ],
)
def test_usage_errors_exit_one(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and err


def test_fuzz_zero_and_small():
    assert call("fuzz", "--cases", "0")[0] == 0
    code, out, _ = call("fuzz", "--cases", "20", "--seed", "5", "--structure", "product")
    assert code == 0 and out.startswith("20 cases over product")


def test_fuzz_reports_mismatch(monkeypatch):
    import fuzzyre.fuzz as fz

    real = fz.synthesize_reduced

    def broken(nfa, lr, lm):
        a = real(nfa, lr, lm)
        return type(a)(a.alphabet, a.delta, a.sigma, np.zeros_like(a.tau), lm, a.labels)

    monkeypatch.setattr(fz, "synthesize_reduced", broken)
    code, out, err = call("fuzz", "--cases", "50", "--seed", "1", "--structure", "godel")
    assert code == 2
    assert "mismatch (reduced automaton, godel)" in err
    assert "fuzzyre eval --structure godel" in err and "--reduced" in err
    # same seed, same first mismatch
    assert call("fuzz", "--cases", "50", "--seed", "1", "--structure", "godel")[2] == err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fuzzyre", "eval", "--expr", "x+0.5x", "--word", "x"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "x\t1\n"
    proc = subprocess.run([sys.executable, "-m", "fuzzyre", "check", "--expr", "x+"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 1 and proc.stdout == "" and "position 2" in proc.stderr
