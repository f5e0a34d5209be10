import pytest
from hypothesis import given
from hypothesis import strategies as st

from krbraid.algebra import LaurentPoly, MultiPoly
from krbraid.braids import InvariantViolation, ResolvedWord, parse_resolved
from krbraid.koszul import (
    KoszulError,
    RingSpec,
    auto_exclude,
    build,
    chi_a1,
    chi_pair,
    differential_matrices,
    exclude_variable,
    from_rows,
    graded_homology,
    local_pieces,
    quotient_boundary,
    row_transform,
    u_polynomials,
)

Q = ("q",)


def qpoly(d):
    return LaurentPoly(Q, {(2 * k,): v for k, v in d.items()})


def test_ring_degrees():
    R = RingSpec.Hax()
    assert R.var_degree("a") == (2, 0) and R.var_degree("x7") == (0, 2)
    assert R.diff_degree == (1, 1)
    assert RingSpec.Hn(3).diff_degree == (0, 4)
    with pytest.raises(KoszulError):
        RingSpec.Hn(1)


def test_u_polynomials_n2():
    g, u1, u2 = u_polynomials(2)
    s, p = MultiPoly.var(g.vars, "s"), MultiPoly.var(g.vars, "p")
    assert g == s**3 - 3 * s * p
    xk, xl = MultiPoly.var(u2.vars, "xk"), MultiPoly.var(u2.vars, "xl")
    assert u2 == -3 * (xk + xl)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_u_polynomial_degrees(n):
    _, u1, u2 = u_polynomials(n)
    w = {v: (0, 2) for v in u1.vars}
    assert u1.homogeneous_degree(w) == (0, 2 * n)
    assert u2.homogeneous_degree(w) == (0, 2 * n - 2)


def test_single_circle_ax_row():
    F = build(ResolvedWord(1, ()), RingSpec.Hax())
    assert F.nrows == 1
    a, b = F.rows[0]
    assert str(a) == "a" and b.is_zero()


def test_concentric_circles_ax_rows():
    F = build(ResolvedWord(3, ()), RingSpec.Hax())
    assert F.nrows == 3 and all(b.is_zero() for _, b in F.rows)


def test_closure_of_tau1_rows_and_potential():
    F = build(parse_resolved("b=2; w= t1"), RingSpec.Hn(2))
    assert F.labels == ("wide1", "wide2", "arc", "arc")
    assert F.potential().is_zero()
    assert F.s1 == ((0, -2), (0, 1), (0, -1), (0, -1))


@given(st.integers(2, 4).flatmap(lambda b: st.lists(st.integers(1, b - 1), max_size=4).map(lambda w: ResolvedWord(b, tuple(w)))))
def test_built_factorizations_are_homogeneous(mu):
    for R in (RingSpec.Hn(2), RingSpec.Hn(3), RingSpec.Hax()):
        F = build(mu, R)
        F.check_homogeneous()
        assert F.potential().is_zero()
        G = build(mu, R, closed=False)
        assert G.potential() == G.boundary_potential()


def _move2_factorization():
    R = RingSpec.Hax()
    V = ("a", "x1", "x2", "x3", "x4", "s1", "s2")
    a, x1, x2, x3, x4, s1, s2 = (MultiPoly.var(V, v) for v in V)
    z = MultiPoly.zero(V)
    rows = [(a, x1 + x2 - s1), (z, x1 * x2 - s2), (a, s1 - x3 - x4), (z, s2 - x3 * x4)]
    return from_rows(R, V, rows, [(-1, 1), (-1, 3), (-1, 1), (-1, 3)]), V


def test_move2_reduction():
    F, V = _move2_factorization()
    minus_one = MultiPoly.const(V, -1)
    G = row_transform(row_transform(F, 2, 0, minus_one), 3, 1, minus_one)
    assert [str(a) for a, _ in G.rows] == ["a", "0", "0", "0"]
    H = exclude_variable(exclude_variable(G, 2, "s1"), 2, "s2")
    assert H.vars == ("a", "x1", "x2", "x3", "x4")
    assert [(str(a), str(b)) for a, b in H.rows] == [("a", "x1 + x2 - x3 - x4"), ("0", "x1*x2 - x3*x4")]
    assert H.potential() == F.potential().with_vars(H.vars)


def test_row_transform_identity_and_potential():
    F, V = _move2_factorization()
    assert row_transform(F, 0, 2, MultiPoly.zero(V)).rows == F.rows
    G = row_transform(F, 1, 3, MultiPoly.const(V, 5))
    assert G.potential() == F.potential()


def test_row_transform_rejects_bad_lambda():
    F, V = _move2_factorization()
    with pytest.raises(KoszulError):
        row_transform(F, 0, 2, MultiPoly.var(V, "x1"))
    with pytest.raises(KoszulError):
        row_transform(F, 0, 0, MultiPoly.const(V, 1))


def test_exclude_linear_row():
    R = RingSpec.Hax()
    V = ("a", "x1", "x2")
    a, x1, x2 = (MultiPoly.var(V, v) for v in V)
    F = from_rows(R, V, [(a, x2 - x1), (a, x1 - x2)], [(-1, 1), (-1, 1)])
    G = exclude_variable(F, 0, "x2")
    assert G.nrows == 1 and G.vars == ("a",)
    assert G.rows[0][1].is_zero()
    with pytest.raises(KoszulError):
        exclude_variable(F, 0, "a")


def test_exclude_refuses_boundary_marking():
    g0, _ = local_pieces(RingSpec.Hn(2))
    with pytest.raises(KoszulError):
        exclude_variable(g0, 0, "x1")


def test_exclusion_preserves_homology():
    for text in ("b=1; w=", "b=2; w=", "b=2; w= t1"):
        F = build(parse_resolved(text), RingSpec.Hn(2))
        a = graded_homology(F, exclude=True).total_by_x()
        b = graded_homology(F, exclude=False).total_by_x()
        assert a == b


def test_auto_exclude_shrinks():
    F = build(parse_resolved("b=3; w= t1 t2 t1"), RingSpec.Hn(2))
    G = auto_exclude(F)
    assert G.nrows < F.nrows and G.potential().is_zero()


def test_circle_homology_hn():
    t = graded_homology(build(ResolvedWord(1, ()), RingSpec.Hn(3)))
    assert t.total_by_x() == qpoly({-2: 1, 0: 1, 2: 1})
    assert t.concentrated and not t.warning


def test_circle_homology_ax():
    t = graded_homology(build(ResolvedWord(1, ()), RingSpec.Hax()), x_window=(0, 9))
    assert t.a_support() == {-1}
    assert sorted(x // 2 for (_, _, x) in t.dims) == [1, 3, 5, 7, 9]
    assert set(t.dims.values()) == {1}


def test_two_circles_ax_support():
    t = graded_homology(build(ResolvedWord(2, ()), RingSpec.Hax()))
    assert t.a_support() == {-2, -1}


def test_square_doubles_homology():
    R = RingSpec.Hn(2)
    one = graded_homology(build(parse_resolved("b=2; w= t1"), R)).total_by_x()
    two = graded_homology(build(parse_resolved("b=2; w= t1 t1"), R)).total_by_x()
    assert two == one * qpoly({-1: 1, 1: 1})


def test_quotient_boundary_single_strand():
    F = build(ResolvedWord(1, ()), RingSpec.Hn(3), closed=False)
    G = quotient_boundary(F)
    assert not G.boundary and G.potential().is_zero()
    assert quotient_boundary(G) is G


def test_closed_homology_requires_closed_input():
    F = build(ResolvedWord(1, ()), RingSpec.Hn(2), closed=False)
    with pytest.raises(KoszulError):
        graded_homology(F)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_chi_identities_hn(n):
    chi_a1(n)
    chi0, chi1 = chi_pair(RingSpec.Hn(n))
    V = chi0.source.vars
    d = MultiPoly.var(V, "x3") - MultiPoly.var(V, "x2")
    assert chi0.commutes() and chi1.commutes()
    assert chi0.homogeneous() and chi1.homogeneous()
    assert chi1.compose(chi0).is_scalar(d)
    assert chi0.compose(chi1).is_scalar(d)
    assert chi0.degree == chi1.degree == (0, 1)


def test_chi_identities_ax():
    chi0, chi1 = chi_pair(RingSpec.Hax())
    V = chi0.source.vars
    d = MultiPoly.var(V, "x3") - MultiPoly.var(V, "x2")
    assert chi1.compose(chi0).is_scalar(d)
    assert chi0.compose(chi1).is_scalar(d)
    assert (chi0.degree, chi1.degree) == ((0, 2), (0, 0))
    assert chi0.homogeneous() and chi1.homogeneous()


def test_differentials_square_to_potential():
    F = build(parse_resolved("b=2; w= t1"), RingSpec.Hn(2), closed=False)
    d0, d1 = differential_matrices(F)
    w = F.potential()
    z = MultiPoly.zero(F.vars)
    for first, second in ((d0, d1), (d1, d0)):
        for r in range(len(second)):
            for c in range(len(first[0])):
                entry = sum((second[r][k] * first[k][c] for k in range(len(first))), z)
                assert entry == (w if r == c else z)


def test_factorization_json_rows():
    rows = build(parse_resolved("b=2; w= t1"), RingSpec.Hn(2)).to_json()
    assert rows[0]["shift"] == [0, -2] and "x3" in rows[0]["b"]
    assert set(rows[0]) == {"a", "b", "shift", "even_shift", "label"}
