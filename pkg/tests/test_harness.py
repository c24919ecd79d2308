import json

import pytest

from ringlab.harness import (IDS, REGISTRY, ConfigError, load_config, parse_config, resolve_cap,
                             run_suite, verify_theorem)
from ringlab.harness.checks import int_range, prime_bounds, split_case, split_list
from ringlab.harness.registry import get
from ringlab.harness.search import TrivialPredicate, instantiate, search_property
from ringlab.ring import RingError

# every statement with a registry entry, in registry order
EXPECTED_IDS = [
    "prop-2.2", "rem-2.2", "prop-2.1", "lem-2.1", "thm-2.3", "cor-2.4", "cor-2.4-1", "thm-2.5",
    "cor-2.6", "prop-sumpotents", "thm-2.7", "conj-1", "thm-2.9", "cor-formal-triangular",
    "cor-upper-triangular", "cor-2.10", "thm-2.11", "cor-k2-nilclean", "lem-3.1", "thm-3.4",
    "cor-3.5", "cor-3.6", "thm-groupring-potent", "thm-3.7", "lem-3.9", "thm-3.10", "cor-3.11",
    "thm-endo-matrix", "cor-endo-perfect", "lem-endo-vector", "lem-3.10", "thm-3.11", "thm-3.12",
    "cor-3.13", "cor-3.13-even", "lem-5.1", "thm-5.2", "lem-5.3", "thm-5.4", "prop-1.6",
    "prop-1.7", "lem-5.4", "thm-5.5", "cor-5.5-triangular", "cor-5.6", "cor-5.7", "thm-5.8",
    "conj-2", "q-1", "q-2", "q-3", "q-4", "q-5", "q-6",
]


def test_registry_is_complete():
    assert sorted(IDS) == sorted(EXPECTED_IDS)
    assert set(REGISTRY) == set(IDS)


def test_registry_kinds():
    kinds = {REGISTRY[i].kind for i in IDS}
    assert kinds <= {"check", "probe", "trivial", "open"}
    for i in IDS:
        e = REGISTRY[i]
        assert e.statement
        if e.kind in ("check", "probe"):
            assert e.run is not None
        else:
            assert e.run is None and e.refinement


def test_unknown_id():
    with pytest.raises(KeyError, match="unknown theorem id"):
        get("thm-99")


def test_parameter_helpers():
    assert split_list("Z(4); Z(6) ;") == ["Z(4)", "Z(6)"]
    assert int_range("2..5") == [2, 3, 4, 5]
    assert int_range("0; 2") == [0, 2]
    assert split_case("Z(4) x Z(2) : [2]") == ("Z(4) x Z(2)", "[2]")
    assert prime_bounds("2:16; 3:27") == {2: 16, 3: 27}


def test_default_suite_has_no_failures(default_suite):
    rep = default_suite
    assert rep.status == "pass"
    bad = [(r.id, f.ring) for r in rep.reports for f in r.failures]
    assert not bad
    assert [r.id for r in rep.reports] == list(load_config().checks)


def test_default_suite_statuses(default_suite):
    by = {r.id: r for r in default_suite.reports}
    assert by["thm-2.7"].status == "not-finitely-instantiable"
    assert by["q-3"].status == "not-finitely-instantiable"
    assert by["lem-3.1"].status == "trivially-true-finite"
    for r in default_suite.reports:
        if r.kind in ("check", "probe"):
            assert r.instances, r.id
            assert r.count("skipped") < len(r.instances), r.id


def test_expected_findings(default_suite):
    by = {r.id: r for r in default_suite.reports}
    assert by["thm-3.12"].count("finding") == 0
    cor = sorted(f.ring for f in by["cor-3.13"].findings)
    assert cor == ["END(C(4)+C(2))", "END(C(8)+C(2))"]
    for f in by["cor-3.13"].findings:
        assert f.params == {"m": 2} and f.detail["oracle"] and f.detail["witness_verified"]
    even = {(f.ring, f.params["m"]) for f in by["cor-3.13-even"].findings}
    assert even and all(m in (2, 6, 8) for _, m in even)


def test_config_parsing():
    cfg = parse_config("[suite]\nchecks = prop-2.2; thm-3.12\nseed = 7\ncap = 500\n"
                       "[prop-2.2]\nrings = Z(4)  # inline comment\n")
    assert cfg.checks == ("prop-2.2", "thm-3.12")
    assert cfg.seed == 7 and cfg.cap == 500
    assert cfg.params_for("prop-2.2") == {"rings": "Z(4)"}


@pytest.mark.parametrize("text,msg", [
    ("[prop-2.2]\nrings = Z(4)\n", r"missing \[suite\]"),
    ("[suite]\nformat = other/2\n", "unsupported format"),
    ("[suite]\nchecks = thm-0.0\n", "unknown theorem id"),
    ("[suite]\n[nope]\nx = 1\n", "unknown theorem id"),
    ("[suite]\nseed = abc\n", "seed must be an integer"),
])
def test_config_errors(text, msg):
    with pytest.raises(ConfigError, match=msg):
        parse_config(text)


def test_user_config_inherits_defaults(tmp_path):
    p = tmp_path / "suite.cfg"
    p.write_text("[suite]\nchecks = prop-2.2; lem-2.1\n[prop-2.2]\nrings = Z(8)\n")
    cfg = load_config(str(p))
    assert cfg.params_for("prop-2.2")["rings"] == "Z(8)"
    assert "cases" in cfg.params_for("lem-2.1")
    rep = run_suite(cfg)
    assert [r.id for r in rep.reports] == ["prop-2.2", "lem-2.1"]
    assert [i.ring for i in rep.reports[0].instances] == ["Z(8)"]


def test_missing_config_file():
    with pytest.raises(ConfigError, match="cannot read config"):
        load_config("/nonexistent/suite.cfg")


def test_cap_resolution(monkeypatch):
    monkeypatch.setenv("RINGLAB_CAP", "77")
    assert resolve_cap(5, 10) == 5
    assert resolve_cap(None, 10) == 10
    assert resolve_cap(None, None) == 77
    monkeypatch.delenv("RINGLAB_CAP")
    assert resolve_cap(None, None) == 65536


def test_tiny_cap_skips_with_reasons():
    rep = verify_theorem("prop-2.1", cap=10)
    small = {"Z(4)", "GF(2,2)", "T(2, Z(2))", "IDZ(Z(4), [2])", "GR(Z(2), C(2))"}
    for e in rep.instances:
        if e.ring in small:
            assert e.status == "pass"
        else:
            assert e.status == "skipped" and "cap 10" in e.detail["reason"]


def test_param_override_and_missing_params():
    rep = verify_theorem("prop-2.2", params={"rings": "Z(9); GF(5)"})
    assert [i.ring for i in rep.instances] == ["Z(9)", "GF(5)"]
    assert rep.status == "pass"
    cfg = parse_config("[suite]\n")
    cfg.params = {}
    with pytest.raises(KeyError, match="missing instance parameter"):
        verify_theorem("prop-2.2", config=cfg)


def test_unbuildable_instance_is_skipped():
    rep = verify_theorem("prop-2.2", params={"rings": "Z(4); Q(2)"})
    assert [i.status for i in rep.instances] == ["pass", "skipped"]
    assert "unknown constructor" in rep.instances[1].detail["reason"]


def test_precondition_skip():
    rep = verify_theorem("thm-3.11", params={"groups": "C(2)"}, config=None)
    assert rep.status == "pass"
    rep = verify_theorem("cor-2.10", params={"rings": "Z(4)"})
    assert rep.instances[0].status == "skipped"


def test_parallel_run_matches_sequential():
    only = ["prop-2.2", "rem-2.2", "lem-2.1", "cor-k2-nilclean"]
    seq = run_suite(only=only, workers=1)
    par = run_suite(only=only, workers=2)
    assert json.dumps(seq.as_dict(), sort_keys=True) == json.dumps(par.as_dict(), sort_keys=True)


def test_search_finds_first_counterexample():
    r = search_property("nil_clean", "M(2, Z(n))", bound=6)
    assert r.counterexample["n"] == 3
    assert [i[2] for i in r.instances[:2]] == ["true", "false"]
    assert len(r.instances) == 5
    r = search_property("UU", "Z(n)", bound=5)
    assert r.counterexample["ring"] == "Z(3)"
    assert r.counterexample["witness"]["element"]["label"] == "2"


def test_search_exhausted_and_skips():
    r = search_property("nil_clean", "Z(n)", bound=2)
    assert r.exhausted
    assert r.as_dict()["exhausted"]["checked"] == 1
    r = search_property("potent", "GF(2, n)", bound=40, start=15)
    assert r.exhausted and all(i[2] == "skipped" for i in r.instances)


def test_search_rejects_trivial_and_unknown():
    with pytest.raises(TrivialPredicate):
        search_property("periodic", "Z(n)", bound=4)
    with pytest.raises(RingError):
        search_property("shiny", "Z(n)", bound=4)
    with pytest.raises(RingError):
        instantiate("Z(4)", 3)
