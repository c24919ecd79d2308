import numpy as np
import pytest

import oracles
from ringlab import jacobson_radical, quotient_ring, ring_from_text
from ringlab.ring import CapExceeded, RingError, Subset
from ringlab.structure import (brute_force_radical_mask, center, characteristic, direct_product,
                               ideal_closure, ideal_nilpotency_index, is_ideal, nilpotency_indices,
                               units_idempotents_nilpotents)

RINGS = ["Z(4)", "Z(12)", "Z(27)", "GF(2,3)", "Z(2) x Z(4)", "M(2, GF(2))", "T(2, Z(4))",
         "GR(Z(2), C(2))", "GR(Z(4), C(2))", "GR(Z(2), S3)", "GR(Z(3), C(3))", "K(Z(4), s=2)",
         "END(C(4)+C(2))", "IDZ(Z(4), [2])", "QUO(Z(16), [4])", "POLY(2, 4)",
         "MOR(Z(4), [2], [2])", "TEN(GF(2,2), GF(2,2))"]


@pytest.mark.parametrize("text", RINGS)
def test_units_idempotents_nilpotents_match_oracle(text):
    R = ring_from_text(text)
    t = oracles.tables(text)
    uin = units_idempotents_nilpotents(R)
    assert set(uin.units.indices.tolist()) == {x for x in range(t.n) if oracles.is_unit(t, x)}
    assert set(uin.idempotents.indices.tolist()) == {x for x in range(t.n) if t.mul[x][x] == x}
    assert set(uin.nilpotents.indices.tolist()) == {x for x in range(t.n) if oracles.is_nilpotent(t, x)}
    idx = nilpotency_indices(R)
    for x in uin.nilpotents.indices[:50]:
        assert idx[x] == oracles.nil_index(t, int(x))


@pytest.mark.parametrize("text", RINGS)
def test_radical_both_paths_match_definition(text):
    R = ring_from_text(text)
    want = oracles.radical(oracles.tables(text))
    auto = jacobson_radical(R)
    brute = brute_force_radical_mask(R)
    assert set(auto.subset.indices.tolist()) == want
    assert set(np.flatnonzero(brute).tolist()) == want
    assert is_ideal(R, auto.subset.mask)
    k = auto.nilpotency_index
    assert k is not None and k >= 1


def test_radical_examples():
    R = ring_from_text("Z(4)")
    assert jacobson_radical(R).subset.labels() == ["0", "2"]
    assert jacobson_radical(R).nilpotency_index == 2
    assert len(jacobson_radical(ring_from_text("GF(3,2)"))) == 1
    assert jacobson_radical(ring_from_text("Z(8)")).nilpotency_index == 3


def test_radical_method_validation():
    R = ring_from_text("Z(4)")
    with pytest.raises(ValueError):
        jacobson_radical(R, method="magic")
    big = ring_from_text("Z(5000)")
    with pytest.raises(CapExceeded):
        brute_force_radical_mask(big)


@pytest.mark.parametrize("text", ["Z(12)", "GF(2,2)", "M(2, GF(2))", "GR(Z(2), S3)", "Z(3) x Z(4)"])
def test_characteristic_matches_oracle(text):
    assert characteristic(ring_from_text(text)).characteristic == oracles.characteristic(oracles.tables(text))


def test_prime_set_of_characteristic():
    assert characteristic(ring_from_text("Z(12)")).pi == (2, 3)
    assert characteristic(ring_from_text("GF(3,2)")).pi == (3,)


def test_center_of_matrix_ring_is_scalars():
    R = ring_from_text("M(2, Z(3))")
    c = center(R)
    assert len(c) == 3
    assert all(R.matrix(x)[0][1] == 0 and R.matrix(x)[0][0] == R.matrix(x)[1][1] for x in c.indices)


def test_ideal_closure_and_quotient():
    R = ring_from_text("Z(12)")
    I = ideal_closure(R, [R.index_of("4")])
    assert sorted(I.labels(), key=int) == ["0", "4", "8"]
    Q = quotient_ring(R, I)
    assert Q.order == 4
    # the projection is a ring homomorphism
    for a in range(12):
        for b in range(12):
            assert Q.projection[R.mul(a, b)] == Q.mul(Q.projection[a], Q.projection[b])
            assert Q.projection[R.add(a, b)] == Q.add(Q.projection[a], Q.projection[b])


def test_quotient_rejects_non_ideal():
    R = ring_from_text("M(2, GF(2))")
    e11 = next(x for x in range(R.order) if R.matrix(x) == [[1, 0], [0, 0]])
    with pytest.raises(RingError):
        quotient_ring(R, Subset.from_indices(R, [R.zero, e11]))
    other = ring_from_text("Z(4)")
    with pytest.raises(RingError):
        quotient_ring(R, Subset.from_indices(other, [0]))


def test_quotient_by_radical_is_semisimple():
    R = ring_from_text("T(2, Z(4))")
    Q = quotient_ring(R, jacobson_radical(R).subset)
    assert Q.order == 4
    assert len(jacobson_radical(Q)) == 1


def test_ideal_nilpotency_index_of_augmentation():
    R = ring_from_text("GR(Z(4), C(2))")
    aug = R.augmentation()
    assert aug.nil and aug.element_index == 3
    assert ideal_nilpotency_index(R, aug.delta.mask) == 3


def test_crt_product_is_elementwise_isomorphic():
    # Z(12) -> Z(4) x Z(3), x -> (x mod 4, x mod 3)
    Z = ring_from_text("Z(12)")
    P = direct_product([ring_from_text("Z(4)"), ring_from_text("Z(3)")])
    phi = [int(P.encode(np.array([x % 4, x % 3]))) for x in range(12)]
    assert sorted(phi) == list(range(12))
    for a in range(12):
        for b in range(12):
            assert phi[Z.add(a, b)] == P.add(phi[a], phi[b])
            assert phi[Z.mul(a, b)] == P.mul(phi[a], phi[b])
