import pytest
from hypothesis import given
from hypothesis import strategies as st

from krbraid.algebra import LaurentPoly
from krbraid.braids import ResolvedWord, find_reduction, parse_resolved, replay_isotopies
from krbraid.koszul import RingSpec, build, graded_homology
from krbraid.moy import a_support_H, clear_memo, gdim_Hn, gn_extremes, quantum_int

Q = ("q",)


def qpoly(d):
    return LaurentPoly(Q, {(2 * k,): v for k, v in d.items()})


resolved = st.integers(2, 4).flatmap(
    lambda b: st.lists(st.integers(1, b - 1), max_size=6).map(lambda w: ResolvedWord(b, tuple(w)))
)


def test_quantum_integers():
    assert quantum_int(1) == qpoly({0: 1})
    assert quantum_int(2) == qpoly({-1: 1, 1: 1})
    assert quantum_int(3) == qpoly({-2: 1, 0: 1, 2: 1})


def test_gdim_examples():
    assert gdim_Hn(ResolvedWord(1, ()), 2) == qpoly({-1: 1, 1: 1})
    assert gdim_Hn(parse_resolved("b=2; w= t1"), 2) == qpoly({-1: 1, 1: 1})
    q2 = quantum_int(2)
    assert gdim_Hn(parse_resolved("b=2; w= t1 t1"), 3) == q2 * q2 * quantum_int(3)


def test_gdim_matches_oracle_on_samples():
    for text, n in (("b=2; w= t1", 3), ("b=3; w= t2 t1 t2", 2), ("b=3; w= t1 t2", 3)):
        mu = parse_resolved(text)
        assert graded_homology(build(mu, RingSpec.Hn(n))).total_by_x() == gdim_Hn(mu, n)


def test_gn_extremes_examples():
    assert gn_extremes(ResolvedWord(3, ()), 2) == (-3, 3)
    assert gn_extremes(parse_resolved("b=2; w= t1"), 2) == (-1, 1)
    lo, hi = gn_extremes(parse_resolved("b=3; w= t2 t1 t2"), 2)
    assert -5 <= lo <= hi <= 5


def test_a_support_examples():
    clear_memo()
    s = a_support_H(ResolvedWord(2, ()))
    assert s.degrees == {-2, -1} and s.exact
    s = a_support_H(parse_resolved("b=2; w= t1"))
    assert s.degrees == {-2, -1} and s.exact
    s = a_support_H(parse_resolved("b=3; w= t2 t1 t2"))
    assert s.degrees <= {-3, -2, -1} and not s.exact
    oracle = graded_homology(build(parse_resolved("b=3; w= t2 t1 t2"), RingSpec.Hax())).a_support()
    assert oracle == {-3, -2, -1}


def test_exactness_flag_does_not_depend_on_call_order():
    clear_memo()
    a_support_H(parse_resolved("b=3; w= t1 t2 t2"))
    assert not a_support_H(parse_resolved("b=3; w= t2 t1 t2")).exact


@given(resolved, st.sampled_from([2, 3, 4]))
def test_gdim_nonnegative_and_palindromic(mu, n):
    g = gdim_Hn(mu, n)
    assert all(c > 0 for c in g.terms.values())
    assert g.is_palindromic("q")


@given(resolved, st.sampled_from([2, 3]))
def test_gdim_total_rank(mu, n):
    # at q = 1 every rule is multiplicative in ranks: circles give n, squares 2
    g = gdim_Hn(mu, n)
    assert g.evaluate_at_one() >= 1


@given(resolved, st.data())
def test_gdim_isotopy_invariant(mu, data):
    if not mu.letters:
        return
    k = data.draw(st.integers(0, len(mu.letters) - 1))
    rotated = ResolvedWord(mu.strands, mu.letters[k:] + mu.letters[:k])
    assert gdim_Hn(rotated, 2) == gdim_Hn(mu, 2)
    step = find_reduction(mu)
    assert gdim_Hn(step.word, 3) == gdim_Hn(mu, 3)
    assert replay_isotopies(mu.letters, step.isotopies) == step.word.letters


@given(resolved, st.sampled_from([2, 3, 4]))
def test_extremes_within_bound(mu, n):
    lo, hi = gn_extremes(mu, n)
    bound = (n - 1) * mu.strands + len(mu.letters)
    assert -bound <= lo <= hi <= bound


@given(resolved)
def test_support_inside_window(mu):
    s = a_support_H(mu)
    assert s.degrees <= set(range(-mu.strands, 0))
    assert s.g_min >= -mu.strands and s.g_max <= -1


def test_rejects_small_n():
    with pytest.raises(ValueError):
        gdim_Hn(ResolvedWord(1, ()), 1)
