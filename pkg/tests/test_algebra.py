from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from krbraid.algebra import (
    GaussianRational,
    InexactDivisionError,
    LaurentPoly,
    MultiPoly,
    RationalFunction,
    SparseMatrixQ,
    Unsolvable,
    VariableMismatchError,
    dense_rank_fraction_free,
    rank,
    rank_and_kernel,
    solve_linear,
)

XY = ("x", "y")
sx, sy = sympy.symbols("x y")


def laurent_to_sympy(p):
    out = 0
    for k, c in p.terms.items():
        out += sympy.Rational(c.numerator, c.denominator) * sx ** sympy.Rational(k[0], 2) * sy ** sympy.Rational(k[1], 2)
    return sympy.expand(out)


def multi_to_sympy(p):
    syms = sympy.symbols(" ".join(p.vars))
    syms = syms if isinstance(syms, tuple) else (syms,)
    out = 0
    for m, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            term *= s**e
        out += term
    return sympy.expand(out)


laurent = st.dictionaries(
    st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
    st.integers(-4, 4),
    max_size=5,
).map(lambda d: LaurentPoly(XY, d))

multi = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)),
    st.integers(-3, 3),
    max_size=5,
).map(lambda d: MultiPoly(("a", "b", "c"), d))


def test_gaussian_arithmetic():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert (1 + i) * (1 - i) == 2
    assert GaussianRational(Fraction(1, 2), 0) == Fraction(1, 2)
    assert not GaussianRational(0, 0)


@given(laurent, laurent)
def test_laurent_ring_ops_match_sympy(p, q):
    assert laurent_to_sympy(p * q) == sympy.expand(laurent_to_sympy(p) * laurent_to_sympy(q))
    assert laurent_to_sympy(p + q) == sympy.expand(laurent_to_sympy(p) + laurent_to_sympy(q))
    assert laurent_to_sympy(p - q) == sympy.expand(laurent_to_sympy(p) - laurent_to_sympy(q))


@given(laurent, laurent)
def test_laurent_exact_division_roundtrip(p, q):
    if q.is_zero():
        return
    assert (p * q).divide_exact(q) == p


def test_laurent_inexact_division_raises():
    x = LaurentPoly.monomial(XY, (1, 0))
    one = LaurentPoly.const(XY, 1)
    with pytest.raises(InexactDivisionError):
        (x * x + one).divide_exact(x + one)


def test_half_tick_exponents():
    p = LaurentPoly.monomial(("t",), (Fraction(1, 2),))
    assert p.terms == {(1,): 1}
    assert (p * p) == LaurentPoly.monomial(("t",), (1,))
    assert p.degree_range("t") == (Fraction(1, 2), Fraction(1, 2))


def test_laurent_negative_power_with_gaussian_coefficient():
    i = GaussianRational(0, 1)
    p = LaurentPoly(("t",), {(2,): i})
    assert p * p**-1 == LaurentPoly.const(("t",), 1)


def test_variable_mismatch():
    with pytest.raises(VariableMismatchError):
        LaurentPoly(XY, {(1,): 1})


@given(multi, multi)
def test_multipoly_product_matches_sympy(p, q):
    assert multi_to_sympy(p * q) == sympy.expand(multi_to_sympy(p) * multi_to_sympy(q))


@given(multi, multi)
def test_multipoly_exact_division(p, q):
    if q.is_zero():
        return
    assert (p * q).divide_exact(q) == p


def test_multipoly_homogeneous_degree():
    V = ("a", "x1")
    a, x = MultiPoly.var(V, "a"), MultiPoly.var(V, "x1")
    w = {"a": (2, 0), "x1": (0, 2)}
    assert (a * x).homogeneous_degree(w) == (2, 2)
    assert MultiPoly.zero(V).homogeneous_degree(w) is None


def test_rational_function_canonical_form():
    T = ("t",)
    t = LaurentPoly.monomial(T, (1,))
    one = LaurentPoly.const(T, 1)
    r = RationalFunction((t - one) * (t + one), (t + one) * 2)
    assert r == RationalFunction(t - one, LaurentPoly.const(T, 2))


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_rank_matches_sympy_and_bareiss(rows):
    M = SparseMatrixQ.from_rows(rows)
    r = sympy.Matrix(rows).rank()
    assert rank(M) == r
    assert dense_rank_fraction_free(rows) == r


@given(matrices)
def test_kernel_basis(rows):
    M = SparseMatrixQ.from_rows(rows)
    r, ker = rank_and_kernel(M)
    assert r + len(ker) == M.ncols
    for v in ker:
        assert not any(M.matvec(v))


@given(matrices, st.data())
def test_solve_linear(rows, data):
    M = SparseMatrixQ.from_rows(rows)
    v0 = data.draw(st.lists(st.integers(-3, 3), min_size=M.ncols, max_size=M.ncols))
    b = M.matvec(v0)
    sol = solve_linear(M, b)
    assert not isinstance(sol, Unsolvable)
    assert M.matvec(sol) == b
    target = data.draw(st.lists(st.integers(-3, 3), min_size=M.nrows, max_size=M.nrows))
    sol = solve_linear(M, target)
    if isinstance(sol, Unsolvable):
        assert sol.verify(M, target)
        assert sympy.Matrix(rows).rank() < sympy.Matrix(rows).row_join(sympy.Matrix(target)).rank()
    else:
        assert M.matvec(sol) == [Fraction(x) for x in target]


def test_solve_on_empty_domain_gives_certificate():
    M = SparseMatrixQ(2, 0, {})
    sol = solve_linear(M, [1, 0])
    assert isinstance(sol, Unsolvable) and sol.verify(M, [1, 0])
