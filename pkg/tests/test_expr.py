import pytest
from hypothesis import given, strategies as st

from ringlab import ParseError, SizeError, build, parse_expr, print_expr, ring_from_text
from ringlab.expr import (AlgFile, Cyclic, ElemIndex, Endo, Field, FormalK, FormalMS, GCyclic,
                          GDihedral, GProduct, GroupRingE, GS3, Idz, Matrix, Mor, MoritaFile, Poly,
                          Product, Quo, RadicalGens, Tensor, Triangular, estimate_order)

small = st.integers(1, 12)
big = st.integers(2, 12)
scalars = st.one_of(st.integers(-9, 9), st.builds(ElemIndex, st.integers(0, 9)))
labels = st.text(alphabet='ab+1"\\ ', min_size=1, max_size=4)
gens = st.one_of(st.just(RadicalGens()),
                 st.lists(st.one_of(st.integers(0, 9), labels), min_size=1, max_size=3).map(tuple))

groups = st.recursive(
    st.one_of(st.builds(GCyclic, small), st.builds(GDihedral, small), st.just(GS3())),
    lambda g: st.lists(g, min_size=2, max_size=3).map(lambda fs: GProduct(tuple(fs))),
    max_leaves=4)

leaves = st.one_of(st.builds(Cyclic, big), st.builds(Field, st.sampled_from([2, 3, 5]), small),
                   st.builds(Endo, st.lists(st.integers(2, 9), min_size=1, max_size=3).map(tuple)),
                   st.builds(Poly, big, small),
                   st.builds(AlgFile, labels), st.builds(MoritaFile, labels))


def _extend(e):
    return st.one_of(
        st.lists(e, min_size=2, max_size=3).map(lambda fs: Product(tuple(fs))),
        st.builds(Matrix, small, e), st.builds(Triangular, small, e),
        st.builds(FormalK, e, scalars), st.builds(FormalMS, big, e, scalars),
        st.builds(GroupRingE, e, groups), st.builds(Idz, e, gens), st.builds(Quo, e, gens),
        st.builds(Tensor, e, e), st.builds(Mor, e, gens, gens))


exprs = st.recursive(leaves, _extend, max_leaves=6)


@given(exprs)
def test_print_parse_roundtrip(e):
    text = print_expr(e)
    assert parse_expr(text) == e
    assert print_expr(parse_expr(text)) == text


@pytest.mark.parametrize("text,canon", [
    ("Z(4)", "Z(4)"),
    ("GF( 2 , 2 )", "GF(2,2)"),
    ("Z(2)xZ(3)", "Z(2) x Z(3)"),
    ("GF(3, 1)", "GF(3)"),
    ("Z(2) × Z(3)", "Z(2) x Z(3)"),
    ("(Z(2) x Z(3)) x Z(5)", "(Z(2) x Z(3)) x Z(5)"),
    ("GR(Z(2), C(2)xC(2))", "GR(Z(2), C(2) x C(2))"),
    ("END(C(4) + C(2))", "END(C(4)+C(2))"),
    ("K(Z(4),s=#2)", "K(Z(4), s=#2)"),
    ("IDZ(Z(4), [2, \"1\"])", 'IDZ(Z(4), [2, "1"])'),
])
def test_canonical_text(text, canon):
    assert print_expr(parse_expr(text)) == canon


@pytest.mark.parametrize("text,msg,col", [
    ("Z(4", "expected ')'", 4),
    ("Q(4)", "unknown constructor 'Q'", 1),
    ("Z(0)", "must be >= ", 3),
    ("GR(Z(2), H(2))", "unknown group 'H'", 10),
    ("Z(4) Z(2)", "unexpected 'Z' after expression", 6),
    ("", "expected a ring constructor, found end of input", 1),
])
def test_parse_errors_have_positions(text, msg, col):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert msg in str(info.value)
    assert info.value.line == 1 and info.value.col == col


def test_parse_error_line_tracking():
    with pytest.raises(ParseError) as info:
        parse_expr("M(2,\n  Q(3))")
    assert info.value.line == 2 and info.value.col == 3


def test_size_guard_fires_before_construction():
    e = parse_expr("M(3, Z(8))")
    assert estimate_order(e) == 8 ** 9
    with pytest.raises(SizeError) as info:
        build(e)
    assert "M(3, Z(8))" in str(info.value)


def test_size_guard_names_the_subexpression():
    with pytest.raises(SizeError) as info:
        ring_from_text("GR(M(3, Z(4)), C(2))")
    assert info.value.subexpr == "M(3, Z(4))"


@pytest.mark.parametrize("text,order", [("Z(2) x Z(3)", 6), ("QUO(Z(8), [4])", 4),
                                        ("IDZ(Z(4), J)", 8), ("POLY(3, 2)", 9),
                                        ("GR(Z(2), D(3))", 64), ("MS(3, Z(2), s=0)", 512)])
def test_built_orders_match_estimates(text, order):
    R = ring_from_text(text)
    assert R.order == order
    # the estimate is exact for free constructions and an upper bound otherwise
    assert estimate_order(parse_expr(text)) >= order


def test_provenance_is_canonical_text():
    assert ring_from_text("GR( Z(2) , S3 )").provenance == "GR(Z(2), S3)"


def test_labels_resolve_in_generators():
    R = ring_from_text('QUO(GF(2,2) x Z(2), ["(0, 1)"])')
    assert R.order == 4


def test_algebra_file(tmp_path):
    from ringlab.constructions.formats import format_algebra
    from ringlab.constructions.tensor import truncated_poly_presentation
    p = tmp_path / "alg.txt"
    p.write_text(format_algebra(truncated_poly_presentation(2, 3)))
    A = ring_from_text(f'ALG("{p}")')
    B = ring_from_text("POLY(2, 3)")
    assert A.order == B.order == 8
    assert all(A.mul(x, y) == B.mul(x, y) for x in range(8) for y in range(8))
