import itertools

import numpy as np
import pytest

import oracles
from ringlab import jacobson_radical, ring_from_text
from ringlab.classify import is_potent_ring
from ringlab.constructions.endo import (compose, endo_ring, endomorphism_oracle,
                                        oracle_isomorphism)
from ringlab.constructions.groups import AbelianGroupSpec, abelian_p_groups, cyclic_group
from ringlab.constructions.matrix import elementwise_equal
from ringlab.constructions.morita import trace_report
from ringlab.constructions.tensor import combined_exponent_check
from ringlab.ring import CapExceeded, RingError
from ringlab.structure import units_idempotents_nilpotents


@pytest.mark.parametrize("inv", [(2,), (4,), (2, 2), (4, 2), (3, 3), (8, 2), (4, 4), (6, 2),
                                 (2, 2, 2), (9, 3)])
def test_endo_order_matches_counting_oracle(inv):
    E = endo_ring(AbelianGroupSpec(inv))
    assert E.order == oracles.endo_count(inv) == oracles.gcd_formula(inv)


def test_endo_example_order():
    assert ring_from_text("END(C(4)+C(2))").order == 32


@pytest.mark.parametrize("inv", [(2, 2), (4, 2), (3, 3), (8, 2)])
def test_endo_matrix_model_agrees_with_maps(inv):
    E = endo_ring(AbelianGroupSpec(inv))
    assert oracle_isomorphism(E) is None


def test_endo_oracle_composition_is_associative():
    spec = AbelianGroupSpec((4, 2))
    maps = endomorphism_oracle(spec)
    assert len(maps) == 32
    f, g, h = maps[5], maps[17], maps[30]
    assert compose(spec, f, compose(spec, g, h)) == compose(spec, compose(spec, f, g), h)


def test_endo_of_elementary_group_is_matrix_ring():
    E = ring_from_text("END(C(2)+C(2))")
    M = ring_from_text("M(2, GF(2))")
    phi = [M.from_matrix(E.matrix(x)) for x in range(E.order)]
    assert sorted(phi) == list(range(16))
    for a in range(16):
        for b in range(16):
            assert phi[E.add(a, b)] == M.add(phi[a], phi[b])
            assert phi[E.mul(a, b)] == M.mul(phi[a], phi[b])


@pytest.mark.parametrize("n", range(2, 13))
def test_endo_of_cyclic_group_is_cyclic_ring(n):
    E = ring_from_text(f"END(C({n}))")
    Z = ring_from_text(f"Z({n})")
    phi = [E.scalar(r) for r in range(n)]
    assert sorted(phi) == list(range(n)) and E.order == n
    for a in range(n):
        for b in range(n):
            assert phi[(a * b) % n] == E.mul(phi[a], phi[b])
            assert phi[Z.add(a, b)] == E.add(phi[a], phi[b])


def test_endo_rejects_bad_matrix():
    E = ring_from_text("END(C(4)+C(2))")
    with pytest.raises(RingError):
        E.from_matrix([[1, 1], [0, 1]])  # C(2) -> C(4) must land in 2C(4)


def test_abelian_p_group_enumeration():
    assert [g.invariants for g in abelian_p_groups(2, 16)] == [
        (2,), (4,), (2, 2), (8,), (4, 2), (2, 2, 2), (16,), (8, 2), (4, 4), (4, 2, 2), (2, 2, 2, 2)]
    assert len(abelian_p_groups(3, 27)) == 6


def test_group_ring_order_and_embedding():
    R = ring_from_text("GR(Z(3), C(4))")
    assert R.order == 81
    g = R.group_element(1)
    assert R.power(g, 4) == R.one
    assert R.power(g, 2) != R.one


@pytest.mark.parametrize("text,potent", [("GR(Z(3), C(2))", True), ("GR(Z(2), C(2))", False),
                                         ("GR(Z(2), C(3))", True), ("GR(Z(3), C(3))", False),
                                         ("GR(GF(2,2), C(3))", True)])
def test_group_ring_potency(text, potent):
    t = oracles.tables(text)
    assert all(oracles.is_potent(t, x) for x in range(t.n)) == potent
    assert is_potent_ring(ring_from_text(text)) == potent


def test_group_ring_radical_examples():
    R = ring_from_text("GR(Z(2), C(2))")
    J = jacobson_radical(R)
    assert sorted(J.subset.labels()) == ["0", "1+g"]
    assert J.nilpotency_index == 2
    aug = R.augmentation()
    assert aug.nil and aug.element_index == 2
    S = ring_from_text("GR(Z(2), S3)")
    assert len(jacobson_radical(S)) == 2


def test_formal_matrix_identity_with_square_twist():
    for base in ("Z(2)", "Z(4)"):
        for s in (0, 2):
            assert elementwise_equal(ring_from_text(f"MS(2, {base}, s={s})"),
                                     ring_from_text(f"K({base}, s={s * s})")) is None


def test_formal_matrix_product_by_hand():
    # K_s(R): diagonal entries pick up s from the off-diagonal products
    K = ring_from_text("K(Z(8), s=2)")
    for x in range(0, K.order, 97):
        for y in range(0, K.order, 89):
            A, B = K.matrix(x), K.matrix(y)
            s = 2
            C = [[(A[0][0] * B[0][0] + s * A[0][1] * B[1][0]) % 8, (A[0][0] * B[0][1] + A[0][1] * B[1][1]) % 8],
                 [(A[1][0] * B[0][0] + A[1][1] * B[1][0]) % 8, (s * A[1][0] * B[0][1] + A[1][1] * B[1][1]) % 8]]
            assert K.matrix(K.mul(x, y)) == C


def test_formal_matrix_needs_central_s():
    with pytest.raises(RingError):
        ring_from_text("K(M(2, GF(2)), s=#1)")


def test_triangular_ring_counts():
    T = ring_from_text("T(3, Z(2))")
    assert T.order == 64
    assert len(jacobson_radical(T)) == 8


def test_morita_block_law():
    R = ring_from_text("MOR(Z(4), [2], [2])")
    assert R.order == 64
    tr = trace_report(R)
    assert tr.block_law and all(h for _, h in tr.block_law)
    assert tr.mn_index is not None


def test_morita_identity_gives_matrix_ring_size():
    R = ring_from_text("MOR(Z(4), [1], [1])")
    assert R.order == 4 ** 4
    assert units_idempotents_nilpotents(R).units.mask.sum() == \
        units_idempotents_nilpotents(ring_from_text("M(2, Z(4))")).units.mask.sum()


def test_tensor_of_gf4():
    T = ring_from_text("TEN(GF(2,2), GF(2,2))")
    assert T.order == 16
    t = oracles.tables("TEN(GF(2,2), GF(2,2))")
    idem = [e for e in range(16) if t.mul[e][e] == e]
    assert len(idem) == 4
    assert all(oracles.is_potent(t, x) for x in range(16))
    chk = combined_exponent_check(T)
    assert chk.pairs == 16 and not chk.failures


def test_tensor_is_commutative_for_commutative_factors():
    assert oracles.is_commutative(oracles.tables("TEN(Z(4), POLY(4, 2))"))


def test_galois_fields_are_fields():
    for p, k in [(2, 3), (3, 2), (5, 1), (2, 4)]:
        F = ring_from_text(f"GF({p},{k})")
        uin = units_idempotents_nilpotents(F)
        assert F.order == p ** k and uin.units.mask.sum() == F.order - 1


def test_idealization_square_zero():
    R = ring_from_text("IDZ(Z(4), [2])")
    assert R.order == 8
    for x in range(R.order):
        for y in range(R.order):
            a, b = R.coords(x), R.coords(y)
            if a[0] == 0 and b[0] == 0:
                assert R.mul(x, y) == R.zero


def test_construction_caps():
    with pytest.raises(CapExceeded):
        ring_from_text("M(4, Z(4))")
    with pytest.raises(CapExceeded):
        ring_from_text("GR(Z(4), C(2))", cap=10)


def test_cyclic_group_table():
    g = cyclic_group(6)
    for a, b in itertools.product(range(6), repeat=2):
        assert g.mul[a, b] == (a + b) % 6
    assert np.all(g.mul[0] == np.arange(6))


def test_endo_oracle_cap():
    with pytest.raises(CapExceeded):
        endomorphism_oracle(AbelianGroupSpec((2, 2, 2)))


def test_tensor_needs_common_base():
    with pytest.raises(RingError):
        ring_from_text("TEN(Z(4), POLY(2, 2))")
