import numpy as np
import pytest
from hypothesis import given, strategies as st

from ringlab import ring_from_text
from ringlab.ring import RingError, Subset, TableRing, validate_ring_axioms

SMALL = ["Z(2)", "Z(6)", "Z(9)", "GF(2,2)", "GF(3,2)", "Z(2) x Z(3)", "M(2, GF(2))",
         "T(2, Z(4))", "K(Z(4), s=2)", "MS(3, Z(2), s=0)", "GR(Z(2), S3)", "GR(Z(3), C(2))",
         "END(C(4)+C(2))", "IDZ(Z(4), [2])", "QUO(Z(8), [4])", "TEN(GF(2,2), GF(2,2))",
         "POLY(2, 3)", "MOR(Z(4), [2], [2])", "MOR(Z(6), [2], [0])"]


@pytest.mark.parametrize("text", SMALL)
def test_axioms_hold_exhaustively_or_sampled(text):
    ring = ring_from_text(text)
    rep = validate_ring_axioms(ring)
    assert rep.ok, (rep.axiom, rep.witness)


def test_axiom_checker_catches_broken_tables():
    # Z(3) addition with a non-associative multiplication
    add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    mul = [[(a * b) % 3 for b in range(3)] for a in range(3)]
    mul[2][2] = 2
    rep = validate_ring_axioms(TableRing(add, mul, 0, 1))
    assert not rep.ok
    assert rep.witness is not None


def test_table_ring_rejects_bad_shapes():
    with pytest.raises(RingError):
        TableRing([[0, 1], [1, 0]], [[0]], 0, 1)
    with pytest.raises(RingError):
        TableRing([[0, 5], [1, 0]], [[0, 0], [0, 1]], 0, 1)


@pytest.mark.parametrize("n", [2, 5, 12])
def test_cyclic_arithmetic_matches_integers(n):
    R = ring_from_text(f"Z({n})")
    a, b = np.meshgrid(np.arange(n), np.arange(n))
    assert (np.asarray(R.add(a, b)) == (a + b) % n).all()
    assert (np.asarray(R.mul(a, b)) == (a * b) % n).all()
    assert R.scalar(n + 3) == 3 % n


def test_matrix_arithmetic_matches_explicit_product():
    R = ring_from_text("M(2, Z(3))")
    for x in range(0, R.order, 7):
        for y in range(0, R.order, 5):
            A, B = R.matrix(x), R.matrix(y)
            C = [[sum(A[i][k] * B[k][j] for k in range(2)) % 3 for j in range(2)] for i in range(2)]
            assert R.matrix(R.mul(x, y)) == C


def test_gf4_multiplication_by_polynomials():
    # GF(4) = F2[t]/(t^2 + t + 1); label "t" and "t+1"
    F = ring_from_text("GF(2,2)")
    t = F.index_of("t")
    t1 = F.index_of("t+1")
    assert F.mul(t, t) == t1
    assert F.mul(t, t1) == F.one


def test_group_ring_product_is_convolution():
    R = ring_from_text("GR(Z(3), C(3))")
    g = R.group
    for x in range(0, R.order, 4):
        for y in range(0, R.order, 3):
            cx, cy = R.coords(x), R.coords(y)
            want = [0] * 3
            for i in range(3):
                for j in range(3):
                    want[int(g.mul[i, j])] = (want[int(g.mul[i, j])] + cx[i] * cy[j]) % 3
            assert list(R.coords(R.mul(x, y))) == want


@given(st.data())
def test_coordinate_encode_decode_roundtrip(data):
    R = ring_from_text("T(3, Z(4))")
    x = data.draw(st.integers(0, R.order - 1))
    assert int(R.encode(R.decode(x))) == x


@given(st.sampled_from(["Z(12)", "GF(3,2)", "M(2, Z(4))", "GR(Z(2), C(2) x C(2))", "K(Z(8), s=2)"]),
       st.data())
def test_ring_identities_on_random_triples(text, data):
    R = ring_from_text(text)
    x, y, z = (data.draw(st.integers(0, R.order - 1)) for _ in range(3))
    assert R.mul(x, R.add(y, z)) == R.add(R.mul(x, y), R.mul(x, z))
    assert R.mul(R.add(x, y), z) == R.add(R.mul(x, z), R.mul(y, z))
    assert R.mul(R.mul(x, y), z) == R.mul(x, R.mul(y, z))
    assert R.add(x, R.neg(x)) == R.zero
    assert R.power(x, 5) == R.mul(R.power(x, 2), R.power(x, 3))


def test_subset_basics():
    R = ring_from_text("Z(8)")
    s = Subset.from_indices(R, [0, 4])
    assert len(s) == 2 and 4 in s and 2 not in s
    assert s.labels() == ["0", "4"]
    assert s == Subset.from_indices(R, [4, 0])


def test_index_of_unknown_label():
    R = ring_from_text("Z(4)")
    with pytest.raises(RingError):
        R.index_of("7")
