import pytest
from hypothesis import given
from hypothesis import strategies as st

from krbraid.algebra import LaurentPoly, Unsolvable, rank
from krbraid.braids import BraidWord, parse_braid
from krbraid.homfly import homfly, specialize_Fn
from krbraid.khovanov import (
    H_OFFSET,
    Q_OFFSET,
    build_cube,
    euler_characteristic,
    g2_extremes,
    homology,
    psi2,
)


@st.composite
def braids(draw, max_strands=3, max_len=5):
    b = draw(st.integers(1, max_strands))
    if b == 1:
        return BraidWord(1, ())
    gens = st.integers(1, b - 1).flatmap(lambda i: st.sampled_from([i, -i]))
    return BraidWord(b, tuple(draw(st.lists(gens, max_size=max_len))))


def table(text):
    return homology(build_cube(parse_braid(text))).dims


def test_cube_of_sigma1():
    C = build_cube(parse_braid("b=2; w= s1"))
    assert len(C.vertices) == 2
    v0, v1 = C.vertices[(0,)], C.vertices[(1,)]
    assert (v0.h, v0.ncircles) == (0, 2)
    assert (v1.h, v1.ncircles) == (-1, 1)


def test_cube_of_empty_word():
    C = build_cube(BraidWord(2, ()))
    assert len(C.vertices) == 1
    assert 2 ** C.vertices[()].ncircles == 4


def _d_squared_zero(B):
    C = build_cube(B)
    for h, q in C.bidegrees():
        D1, D2 = C.differential(h, q), C.differential(h + 1, q)
        if D1.ncols and D2.nrows:
            assert (D2 @ D1).is_zero()


def test_d_squared_on_sigma1_sigma2_sigma1():
    B = parse_braid("b=3; w= s1 s2 s1")
    assert len(build_cube(B).vertices) == 8
    _d_squared_zero(B)


@given(braids())
def test_d_squared_random(B):
    _d_squared_zero(B)


def test_calibration():
    assert (H_OFFSET, Q_OFFSET) == (0, 0)
    assert table("b=2; w= s1") == {(0, -1): 1, (0, 1): 1}


def test_unlink():
    assert table("b=2; w=") == {(0, -2): 1, (0, 0): 2, (0, 2): 1}
    assert g2_extremes(BraidWord(2, ())) == (-2, 2)


def test_trefoil():
    B = parse_braid("b=2; w= s1 s1 s1")
    T = homology(build_cube(B))
    assert T.dims == {(0, 1): 1, (0, 3): 1, (-2, 5): 1, (-3, 9): 1}
    assert euler_characteristic(T) == specialize_Fn(homfly(B), 2)
    lo, hi = g2_extremes(B, T)
    assert 1 <= lo <= hi <= 11
    assert T.poincare().vars == ("t", "q")


def test_unknot_extremes():
    assert g2_extremes(parse_braid("b=2; w= s1")) == (-1, 1)


@given(braids())
def test_euler_characteristic_identity(B):
    assert euler_characteristic(homology(build_cube(B))) == specialize_Fn(homfly(B), 2)


@given(braids(max_len=4), st.data())
def test_presentation_invariance(B, data):
    ref = homology(build_cube(B)).dims
    moves = [B.stabilize_pos(), B.stabilize_neg(), B.free_reduce()]
    if B.letters:
        moves.append(B.rotate(data.draw(st.integers(0, len(B.letters) - 1))))
    if B.strands > 1:
        i = data.draw(st.integers(1, B.strands - 1))
        moves.append(B.conjugate((i,)))
        moves.append(BraidWord(B.strands, B.letters + (i, -i)))
    for C in moves:
        assert homology(build_cube(C)).dims == ref


@pytest.mark.parametrize(
    "text,zero,q",
    [("b=2; w= s1", False, 1), ("b=2; w= -s1", True, 3), ("b=2; w= s1 s1 s1", False, -1)],
)
def test_psi2_examples(text, zero, q):
    c = psi2(parse_braid(text))
    assert c.is_cocycle
    assert c.class_zero is zero
    assert c.bidegree == (0, q)
    assert c.mirror == parse_braid(text).mirror()


def test_psi2_certificates():
    c = psi2(parse_braid("b=2; w= -s1"))
    assert isinstance(c.witness, dict) and c.witness
    c = psi2(parse_braid("b=3; w= s1 s2 s1"))
    assert isinstance(c.witness, Unsolvable)
    js = c.to_json()
    assert js["witness"]["kind"] == "unsolvable" and js["class_zero"] is False


def test_psi2_positive_braid_has_no_h_minus_one_chains():
    # the mirror of a positive braid has only negative crossings, so nothing
    # lives in homological degree -1 and the class cannot be a coboundary
    B = parse_braid("b=3; w= s1 s2 s2 s1")
    C = build_cube(B.mirror())
    c = psi2(B)
    assert not C.generators(-1, c.bidegree[1])
    assert rank(C.differential(-1, c.bidegree[1])) == 0
    assert not c.class_zero


@given(braids())
def test_psi2_degree_is_minus_sl(B):
    c = psi2(B)
    assert c.is_cocycle and c.bidegree == (0, -B.sl)


@given(braids(max_len=4), st.data())
def test_psi2_transverse_invariance(B, data):
    base = psi2(B).class_zero
    assert psi2(B.stabilize_pos()).class_zero == base
    if B.letters:
        assert psi2(B.rotate(data.draw(st.integers(0, len(B.letters) - 1)))).class_zero == base
    if B.strands > 1:
        i = data.draw(st.integers(1, B.strands - 1))
        assert psi2(B.conjugate((data.draw(st.sampled_from([i, -i])),))).class_zero == base


@given(braids(max_len=4))
def test_psi2_negative_stabilization_kills(B):
    assert psi2(B.stabilize_neg()).class_zero


def test_homology_table_json():
    rows = homology(build_cube(parse_braid("b=2; w= s1"))).rows_json()
    assert rows == [{"h": 0, "q": -1, "dim": 1}, {"h": 0, "q": 1, "dim": 1}]
