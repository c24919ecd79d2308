"""The twelve acceptance criteria, one test each, in order.

Expected values are frozen from the slow reference code in ``oracles.py``;
the session fixture ``default_suite`` is the packaged default suite run once.
"""

import json

import numpy as np
import pytest

import oracles
from ringlab import (classify_ring, potent_nilpotent_decompose, q_bound, ring_from_text,
                     strongly_m_nil_clean, uniform_period)
from ringlab.classify import CLASSIFY_CAP, element_period
from ringlab.constructions.endo import oracle_isomorphism
from ringlab.constructions.matrix import elementwise_equal, matrix_ring
from ringlab.constructions.morita import trace_report
from ringlab.constructions.tensor import combined_exponent_check
from ringlab.harness import run_suite
from ringlab.structure import (RADICAL_CAP, brute_force_radical_mask, direct_product,
                               jacobson_radical)


def _report(suite, id):
    return next(r for r in suite.reports if r.id == id)


def _entry(suite, id, ring):
    return next(e for e in _report(suite, id).instances if e.ring == ring)


# 1 ---------------------------------------------------------------------------------

def test_01_potent_plus_nilpotent_decomposition_of_every_element():
    for text in ["Z(4)", "Z(6)", "Z(12)", "GF(2,2)", "M(2, GF(2))"]:
        R = ring_from_text(text)
        for x in range(R.order):
            d = potent_nilpotent_decompose(R, x)
            p = element_period(R, x)
            assert R.add(d.a, d.b) == x
            assert R.power(d.b, p.k + 1) == d.b
            assert R.power(d.a, p.n) == R.zero
            assert R.mul(d.a, d.b) == R.zero == R.mul(d.b, d.a)
    R = ring_from_text("Z(12)")
    d = potent_nilpotent_decompose(R, R.index_of("2"))
    # frozen: the unique annihilating potent + nilpotent pair for 2 in Z(12)
    assert (R.label(d.a), R.label(d.b)) == ("6", "8")


# 2 ---------------------------------------------------------------------------------

UNIFORM = {"Z(6)": (1, 2), "Z(4)": (2, 2), "M(2, GF(2))": (2, 6), "GF(2,2)": (1, 3)}


def test_02_uniform_periods():
    for text, want in UNIFORM.items():
        p = uniform_period(ring_from_text(text))
        assert (p.n, p.k) == want == oracles.uniform_period(oracles.tables(text))


# 3 ---------------------------------------------------------------------------------

def test_03_matrix_exponent_bound():
    for text, count in [("GF(2)", 16), ("Z(4)", 256)]:
        base = ring_from_text(text)
        r = q_bound(base, 2)
        assert r.q == 4 and r.checked == count and r.verified
        M = matrix_ring(2, base)
        for A in range(M.order):
            y = M.sub(M.power(A, 4), A)
            for _ in range(8):
                y = M.mul(y, y)
            assert y == M.zero


# 4 ---------------------------------------------------------------------------------

def test_04_radical_structure(default_suite):
    R = ring_from_text("Z(4)")
    assert jacobson_radical(R).subset.labels() == ["0", "2"]
    G = ring_from_text("GR(Z(2), C(2))")
    J = jacobson_radical(G)
    assert sorted(J.subset.labels()) == ["0", "1+g"]
    aug = G.augmentation()
    assert np.array_equal(aug.delta.mask, J.subset.mask) and aug.ideal_index == 2
    K = ring_from_text("K(Z(4), s=2)")
    JK = jacobson_radical(K)
    assert K.order == 256 and len(JK) == 64
    assert JK.method == "structural"
    assert np.array_equal(JK.subset.mask, brute_force_radical_mask(K))
    assert _entry(default_suite, "cor-2.10", "K(Z(4), s=2)").detail["radical_is_block"]
    # dual-path comparison over every ring the default suite builds
    compared = 0
    for text in sorted({e.ring for r in default_suite.reports for e in r.instances
                        if e.status != "skipped"}):
        try:
            ring = ring_from_text(text, cap=1 << 18)
        except Exception:
            continue
        if ring.order > RADICAL_CAP:
            continue
        structural = ring.structural_radical()
        if structural is None:
            continue
        assert np.array_equal(structural, brute_force_radical_mask(ring)), text
        compared += 1
    assert compared >= 50


# 5 ---------------------------------------------------------------------------------

def test_05_formal_matrix_identities(default_suite):
    for base in ("Z(2)", "Z(4)"):
        for s in (0, 2):
            assert elementwise_equal(ring_from_text(f"MS(2, {base}, s={s})"),
                                     ring_from_text(f"K({base}, s={s * s})")) is None
    e = _entry(default_suite, "thm-2.11", "MS(3, Z(4), s=2)")
    assert e.status == "pass"
    assert e.detail["pairs"] == 16 * 16 and "problem" not in e.detail


# 6 ---------------------------------------------------------------------------------

def test_06_endomorphism_rings():
    E = ring_from_text("END(C(4)+C(2))")
    assert E.order == 32 == oracles.endo_count((4, 2))
    assert oracle_isomorphism(E) is None
    E2 = ring_from_text("END(C(2)+C(2))")
    M = ring_from_text("M(2, GF(2))")
    phi = [M.from_matrix(E2.matrix(x)) for x in range(E2.order)]
    assert sorted(phi) == list(range(16))
    assert all(phi[E2.add(a, b)] == M.add(phi[a], phi[b]) and phi[E2.mul(a, b)] == M.mul(phi[a], phi[b])
               for a in range(16) for b in range(16))
    for n in range(2, 13):
        En = ring_from_text(f"END(C({n}))")
        scal = [En.scalar(r) for r in range(n)]
        assert En.order == n and sorted(scal) == list(range(n))
        assert all(En.mul(scal[a], scal[b]) == scal[a * b % n] for a in range(n) for b in range(n))


# 7 ---------------------------------------------------------------------------------

def test_07_divisibility_criterion_matches_brute_force(default_suite):
    rep = _report(default_suite, "thm-3.12")
    # 11 abelian 2-groups of order <= 16 and 6 abelian 3-groups of order <= 27, m = 2..10
    assert len(rep.instances) == 17 * 9
    assert rep.count("skipped") == 0 and rep.count("fail") == 0
    for e in rep.instances:
        if e.status == "finding":
            assert {"criterion", "oracle", "finding"} <= set(e.detail)
        else:
            assert e.detail["criterion"] == e.detail["oracle"]
    E = ring_from_text("END(C(2)+C(2))")
    assert strongly_m_nil_clean(E, 2).holds is False
    assert strongly_m_nil_clean(E, 4).holds is True
    t = oracles.tables("END(C(2)+C(2))")
    assert oracles.strongly_m_nil_clean(t, 2) is False
    assert oracles.strongly_m_nil_clean(t, 4) is True


# 8 ---------------------------------------------------------------------------------

def test_08_group_ring_potency():
    assert classify_ring(ring_from_text("GR(Z(3), C(2))")).status("potent") == "true"
    G2 = ring_from_text("GR(Z(2), C(2))")
    assert classify_ring(G2).status("potent") == "false"
    aug = G2.augmentation()
    assert aug.nil and aug.element_index == 2
    aug4 = ring_from_text("GR(Z(4), C(2))").augmentation()
    assert aug4.nil and aug4.element_index == 3
    S = ring_from_text("GR(Z(2), S3)")
    assert classify_ring(S).status("nil_clean") == "true"
    assert oracles.nil_clean(oracles.tables("GR(Z(2), S3)"))
    assert len(jacobson_radical(S)) == 2 == len(oracles.radical(oracles.tables("GR(Z(2), S3)")))


# 9 ---------------------------------------------------------------------------------

def test_09_tensor_product_of_fields():
    T = ring_from_text("TEN(GF(2,2), GF(2,2))")
    t = oracles.tables("TEN(GF(2,2), GF(2,2))")
    assert T.order == 16
    assert sum(1 for e in range(16) if t.mul[e][e] == e) == 4
    assert classify_ring(T).status("potent") == "true"
    chk = combined_exponent_check(T)
    assert chk.pairs == 16 and chk.failures == ()


# 10 --------------------------------------------------------------------------------

def test_10_morita_block_law(default_suite):
    R = ring_from_text("MOR(Z(4), [2], [2])")
    assert R.order == 64
    tr = trace_report(R)
    assert tr.block_law and all(h for _, h in tr.block_law)
    e = _entry(default_suite, "thm-5.5", "MOR(Z(4), [2], [2])")
    assert e.status == "pass" and e.detail["decomposed"] == 64


# 11 --------------------------------------------------------------------------------

IMPLICATIONS = [("boolean", "potent"), ("boolean", "nil_clean"), ("strongly_nil_clean", "nil_clean"),
                ("strongly_nil_clean", "UU"), ("strongly_m_nil_clean", "m_nil_clean"),
                ("m_potent_uniform", "potent"), ("reduced", "NI"), ("reduced", "abelian"),
                ("commutative", "abelian"), ("commutative", "quasi_duo"), ("local", "quasi_duo"),
                ("NI", "two_primal"), ("two_primal", "NI")]


class _Ops:
    """Direct recomputation of the facts a counterwitness claims."""

    def __init__(self, R):
        self.R = R
        e = R.elements()
        self.elems = e
        y = e
        for _ in range(5):  # exponent 32 exceeds any nilpotency index below 2^32 elements
            y = np.asarray(R.mul(y, y))
        self.nil = y == R.zero
        self.idem = np.asarray(R.mul(e, e)) == e

    def unit(self, x):
        return bool((np.asarray(self.R.mul(x, self.elems)) == self.R.one).any())

    def power_mask(self, m):
        e = self.elems
        return np.asarray(self.R.power(e, m)) == e

    def decomposable(self, x, parts, commuting):
        R = self.R
        q = np.asarray(R.sub(x, parts))
        ok = self.nil[q]
        if commuting:
            ok &= np.asarray(R.mul(x, parts)) == np.asarray(R.mul(parts, x))
        return bool(ok.any())

    def in_radical(self, x):
        return all(self.unit(self.R.sub(self.R.one, self.R.mul(r, x))) for r in range(self.R.order))


def _refute(R, ops, name, entry, m):
    w = entry.witness
    if "elements" in w:
        x, y = (v["index"] for v in w["elements"])
        assert R.mul(x, y) != R.mul(y, x)
        if name == "abelian":
            assert ops.idem[x]
        return
    x = w["element"]["index"]
    idem = np.flatnonzero(ops.idem)
    if name == "potent":
        assert all(R.power(x, k) != x for k in range(2, R.order + 2))
    elif name == "boolean":
        assert R.mul(x, x) != x
    elif name == "m_potent_uniform":
        assert R.power(x, m) != x
    elif name == "nil_clean":
        assert not ops.decomposable(x, idem, False)
    elif name == "strongly_nil_clean":
        assert not ops.decomposable(x, idem, True)
    elif name == "m_nil_clean":
        assert not ops.decomposable(x, np.flatnonzero(ops.power_mask(m)), False)
    elif name == "strongly_m_nil_clean":
        assert not ops.decomposable(x, np.flatnonzero(ops.power_mask(m)), True)
    elif name == "weakly_nil_clean":
        assert not ops.decomposable(x, np.concatenate([idem, np.asarray(R.neg(idem))]), False)
    elif name == "UU":
        assert ops.unit(x) and not ops.nil[R.sub(x, R.one)]
    elif name == "local":
        assert not ops.unit(x) and not ops.in_radical(x)
    elif name == "NI":
        nil = np.flatnonzero(ops.nil)
        sums = np.asarray(R.add(nil[:, None], nil[None, :]))
        prods = np.asarray(R.mul(ops.elems[:, None], nil[None, :]))
        assert not (ops.nil[sums].all() and ops.nil[prods].all())
    elif name == "two_primal":
        assert ops.nil[x] and not ops.in_radical(x)
    elif name == "quasi_duo":
        assert not ops.in_radical(x)
        y = x
        for _ in range(5):
            y = R.mul(y, y)
        assert ops.in_radical(y)
    elif name == "reduced":
        assert x != R.zero and ops.nil[x]
    else:
        pytest.fail(f"no refutation rule for {name}")


def test_11_profile_coherence_on_default_instances(default_suite):
    texts = sorted({e.ring for r in default_suite.reports for e in r.instances if e.status != "skipped"})
    profiled = 0
    for text in texts:
        R = ring_from_text(text, cap=1 << 18)
        if R.order > CLASSIFY_CAP:
            continue
        prof = classify_ring(R, m=3)
        for a, b in IMPLICATIONS:
            if prof.holds(a):
                assert prof.holds(b), (text, a, b)
        if R.order <= 1024:
            ops = _Ops(R)
            for name, entry in prof.flags.items():
                if entry.status == "false":
                    _refute(R, ops, name, entry, 3)
        profiled += 1
    assert profiled >= 100
    # CRT: Z(12) and Z(4) x Z(3) agree elementwise under x -> (x mod 4, x mod 3)
    Z = ring_from_text("Z(12)")
    P = direct_product([ring_from_text("Z(4)"), ring_from_text("Z(3)")])
    phi = [int(P.encode(np.array([x % 4, x % 3]))) for x in range(12)]
    assert sorted(phi) == list(range(12))
    assert all(phi[Z.add(a, b)] == P.add(phi[a], phi[b]) and phi[Z.mul(a, b)] == P.mul(phi[a], phi[b])
               for a in range(12) for b in range(12))
    # characteristic-12 instances split along 4 x 3
    split = [e for e in _report(default_suite, "prop-1.6").instances
             if e.detail.get("characteristic") == 12]
    assert len(split) == 4
    for e in split:
        two, three = e.detail["factors"]
        assert e.status == "pass" and e.detail["bijective"] and e.detail["homomorphism"] == "ok"
        assert two * three == ring_from_text(e.ring).order
        assert two & (two - 1) == 0
        while three % 3 == 0:
            three //= 3
        assert three == 1


# 12 --------------------------------------------------------------------------------

def test_12_suite_reports_are_deterministic(default_suite):
    again = run_suite()
    first = json.dumps(default_suite.as_dict(), indent=2, sort_keys=False)
    second = json.dumps(again.as_dict(), indent=2, sort_keys=False)
    assert first.encode() == second.encode()
