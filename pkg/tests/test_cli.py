import json
import subprocess
import sys

import pytest

from ringlab.cli import execute, main, render_report


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, (json.loads(out) if out else None), err


def test_classify_json(capsys):
    code, rep, _ = run_json(capsys, "classify", "Z(6)")
    assert code == 0
    assert rep["format"] == "ringlab/1" and rep["command"] == "classify"
    assert rep["ring"] == "Z(6)" and rep["order"] == 6 and rep["characteristic"] == 6
    assert rep["flags"]["nil_clean"] == "false"
    assert rep["witnesses"]["nil_clean"]["element"]["label"] == "5"
    assert rep["flags"]["periodic"] == "trivially-true-finite"
    assert rep["reasons"]["periodic"]


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "Z(6)")
    assert code == 0
    assert "nil_clean" in out and "5 (#5)" in out
    assert out.splitlines()[0].startswith("ring")


def test_decompose_spot_value(capsys):
    code, rep, _ = run_json(capsys, "decompose", "Z(12)", "--elem", "2")
    assert code == 0
    d = rep["decompositions"][0]
    assert d["a"]["label"] == "6" and d["b"]["label"] == "8" and d["certified"]


def test_decompose_whole_ring(capsys):
    code, rep, _ = run_json(capsys, "decompose", "M(2, GF(2))")
    assert code == 0 and len(rep["decompositions"]) == 16
    assert all(d["certified"] for d in rep["decompositions"])


def test_element_by_label(capsys):
    code, rep, _ = run_json(capsys, "element", "GF(2,2)", "--elem", "t")
    assert code == 0
    assert rep["element"]["label"] == "t"
    assert rep["period"] == {"n": 1, "k": 3}


def test_radical_and_period(capsys):
    code, rep, _ = run_json(capsys, "radical", "Z(4)", "--method", "brute")
    assert rep["radical"]["size"] == 2 and rep["radical"]["method"] == "brute"
    code, rep, _ = run_json(capsys, "uniform-period", "M(2, GF(2))")
    assert rep["period"] == {"n": 2, "k": 6} and rep["potent"] is False


def test_qbound(capsys):
    code, rep, _ = run_json(capsys, "qbound", "Z(4)", "--n", "2")
    assert code == 0 and rep["qbound"]["q"] == 4 and rep["qbound"]["matrices_checked"] == 256


def test_verify_and_overrides(capsys):
    code, rep, _ = run_json(capsys, "verify", "thm-3.12", "--m", "2..4", "--max-group", "8")
    assert code == 0
    t = rep["theorem"]
    assert t["status"] == "pass" and t["failed"] == 0
    # six abelian 2-groups of order <= 8 plus C(3), three values of m
    assert t["instances"] == 3 * (6 + 1)
    code, out, _ = run(capsys, "verify", "prop-2.2", "--set", "rings=Z(9)")
    assert code == 0 and out.startswith("prop-2.2: pass")


def test_verify_open_statement(capsys):
    code, rep, _ = run_json(capsys, "verify", "conj-1")
    assert code == 0 and rep["theorem"]["status"] == "not-finitely-instantiable"


def test_suite_subset(capsys):
    code, rep, _ = run_json(capsys, "suite", "--only", "prop-2.2,lem-2.1", "--set",
                            "prop-2.2.rings=Z(4); Z(6)")
    assert code == 0 and rep["theorems"] == 2
    assert rep["reports"][0]["instances"] == 2


def test_search_exit_codes(capsys):
    code, rep, _ = run_json(capsys, "search", "nil_clean", "--family", "M(2, Z(n))", "--bound", "5")
    assert code == 2 and rep["counterexample"]["n"] == 3
    code, rep, _ = run_json(capsys, "search", "nil_clean", "--family", "Z(n)", "--bound", "2")
    assert code == 0 and rep["exhausted"]["checked"] == 1
    code, out, err = run(capsys, "search", "periodic", "--family", "Z(n)", "--bound", "4")
    assert code == 1 and "trivially true" in err and not out


@pytest.mark.parametrize("argv,needle", [
    (["classify", "Z(4"], "parse error"),
    (["classify", "M(4, Z(8))"], "cap exceeded"),
    (["classify", "Z(8)", "--cap", "4"], "cap exceeded"),
    (["verify", "thm-0.0"], "unknown theorem id"),
    (["frobnicate"], "usage error"),
    (["element", "Z(4)"], "--elem is required"),
    (["element", "Z(4)", "--elem", "9"], "outside"),
    (["qbound", "T(2, GF(2))"], "not abelian"),
    (["suite", "--config", "/nonexistent.cfg"], "cannot read config"),
])
def test_error_exit_codes(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert needle in err
    assert out == ""


def test_text_and_json_share_one_report():
    rep, code, err, _ = execute(["classify", "GF(2,2)"])
    assert err is None
    text = render_report(rep, "text")
    data = json.loads(render_report(rep, "json"))
    assert data == rep
    for flag, status in rep["flags"].items():
        assert any(line.split()[:2] == [flag, status] for line in text.splitlines())


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "ringlab", "uniform-period", "Z(4)", "--format", "json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["period"] == {"n": 2, "k": 2}
