"""Exact arithmetic substrate: rationals, polynomials, sparse linear algebra."""

from fractions import Fraction as Rational

from .linalg import (
    SparseMatrixQ,
    Unsolvable,
    dense_rank_fraction_free,
    rank,
    rank_and_kernel,
    solve_linear,
)
from .poly import (
    AlgebraError,
    GaussianRational,
    InexactDivisionError,
    LaurentPoly,
    MultiPoly,
    RationalFunction,
    VariableMismatchError,
)

__all__ = [
    "Rational",
    "AlgebraError",
    "GaussianRational",
    "InexactDivisionError",
    "LaurentPoly",
    "MultiPoly",
    "RationalFunction",
    "VariableMismatchError",
    "SparseMatrixQ",
    "Unsolvable",
    "dense_rank_fraction_free",
    "rank",
    "rank_and_kernel",
    "solve_linear",
]
