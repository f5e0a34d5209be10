"""Sparse exact linear algebra over Q.

Entries are Python ints or ``Fraction``; integer matrices stay integral as long
as the chosen pivots are units, which is the common case for cube
differentials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

__all__ = [
    "SparseMatrixQ",
    "Unsolvable",
    "rank",
    "rank_and_kernel",
    "solve_linear",
    "dense_rank_fraction_free",
]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class SparseMatrixQ:
    nrows: int
    ncols: int
    entries: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.nrows and 0 <= c < self.ncols):
                raise IndexError(f"entry ({r},{c}) outside {self.nrows}x{self.ncols}")
            if isinstance(v, str):
                v = Fraction(v)
            if v:
                clean[(r, c)] = _norm(v)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SparseMatrixQ":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(nrows, ncols, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrixQ":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def rows(self) -> list[dict]:
        out: list[dict] = [dict() for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_dense(self) -> list[list]:
        d = [[0] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            d[r][c] = v
        return d

    def matvec(self, v: Sequence) -> list:
        out = [0] * self.nrows
        for (r, c), a in self.entries.items():
            if v[c]:
                out[r] += a * v[c]
        return [_norm(x) for x in out]

    def vecmat(self, y: Sequence) -> list:
        out = [0] * self.ncols
        for (r, c), a in self.entries.items():
            if y[r]:
                out[c] += y[r] * a
        return [_norm(x) for x in out]

    def __matmul__(self, other: "SparseMatrixQ") -> "SparseMatrixQ":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        orows = other.rows()
        acc: dict = {}
        for (r, k), a in self.entries.items():
            for c, b in orows[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + a * b
        return SparseMatrixQ(self.nrows, other.ncols, acc)

    def is_zero(self) -> bool:
        return not self.entries


def _eliminate(rows: list[dict], ncols: int, markowitz: bool, track: list[dict] | None = None):
    """Forward elimination in place.

    Returns ``(pivots, alive)`` with pivots as (pivot_col, row index) in
    pivot order.  Columns are scanned in ascending order; with ``markowitz``
    the pivot row for a column is the sparsest candidate (ties: unit pivots,
    then lowest row).  Integer input is eliminated fraction-free: rows are
    cross-multiplied and, when untracked, divided by their content.
    """
    integral = all(type(v) is int for r in rows for v in r.values())
    col_rows: dict[int, set] = {}
    for i, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    alive = set(range(len(rows)))
    pivots = []
    for col in range(ncols):
        cands = [i for i in col_rows.get(col, ()) if i in alive]
        if not cands:
            continue
        if markowitz:
            piv = min(cands, key=lambda i: (len(rows[i]), rows[i][col] not in (1, -1), i))
        else:
            piv = min(cands)
        alive.discard(piv)
        prow = rows[piv]
        pv = prow[col]
        ptrack = track[piv] if track is not None else None
        for i in cands:
            if i == piv:
                continue
            row = rows[i]
            f = row[col]
            if pv == 1 or pv == -1:
                scale, m = 1, f * pv
            elif integral:
                g = gcd(pv, f)
                scale, m = pv // g, f // g
            else:
                scale, m = 1, _norm(Fraction(f) / pv)
            if scale != 1:
                for c in row:
                    row[c] *= scale
            for c, v in prow.items():
                nv = row.get(c, 0) - m * v
                if nv:
                    if c not in row:
                        col_rows.setdefault(c, set()).add(i)
                    row[c] = nv if integral else _norm(nv)
                else:
                    row.pop(c, None)
                    col_rows[c].discard(i)
            if track is not None:
                tr = track[i]
                if scale != 1:
                    for c in tr:
                        tr[c] *= scale
                for c, v in ptrack.items():
                    nv = tr.get(c, 0) - m * v
                    if nv:
                        tr[c] = _norm(nv)
                    else:
                        tr.pop(c, None)
            elif integral and scale != 1 and row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    for c in row:
                        row[c] //= g
        pivots.append((col, piv))
    return pivots, alive


def rank(M: SparseMatrixQ) -> int:
    rows = M.rows()
    # eliminate along the shorter side
    if M.ncols > M.nrows:
        cols: list[dict] = [dict() for _ in range(M.ncols)]
        for (r, c), v in M.entries.items():
            cols[c][r] = v
        rows, n = cols, M.nrows
    else:
        n = M.ncols
    pivots, _ = _eliminate(rows, n, markowitz=True)
    return len(pivots)


def _rref(M: SparseMatrixQ):
    """Reduced row echelon form with pivots chosen in ascending column order."""
    rows = M.rows()
    pivots, _ = _eliminate(rows, M.ncols, markowitz=False)
    # back substitution to full RREF
    prow = {}
    for col, i in pivots:
        r = rows[i]
        pv = r[col]
        if pv != 1:
            for c in list(r):
                r[c] = _norm(Fraction(r[c]) / pv)
        prow[col] = r
    cols_desc = sorted(prow, reverse=True)
    for col in cols_desc:
        r = prow[col]
        for other_col in cols_desc:
            if other_col >= col:
                continue
            o = prow[other_col]
            f = o.get(col)
            if f:
                for c, v in r.items():
                    nv = o.get(c, 0) - f * v
                    if nv:
                        o[c] = _norm(nv)
                    else:
                        o.pop(c, None)
    return [(col, prow[col]) for col in sorted(prow)]


def rank_and_kernel(M: SparseMatrixQ) -> tuple[int, list[list]]:
    """Rank and a kernel basis (one vector per free column, ascending)."""
    piv = _rref(M)
    pivot_cols = {c for c, _ in piv}
    basis = []
    for free in range(M.ncols):
        if free in pivot_cols:
            continue
        v = [0] * M.ncols
        v[free] = 1
        for col, r in piv:
            a = r.get(free)
            if a:
                v[col] = _norm(-a)
        basis.append(v)
    return len(piv), basis


@dataclass(frozen=True)
class Unsolvable:
    """Certificate that ``M v = b`` has no solution: ``y M = 0`` and ``y.b != 0``."""

    y: list

    def verify(self, M: SparseMatrixQ, b: Sequence) -> bool:
        if any(M.vecmat(self.y)):
            return False
        return sum(yi * bi for yi, bi in zip(self.y, b)) != 0


def solve_linear(M: SparseMatrixQ, b: Sequence):
    """Solve ``M v = b`` exactly.

    Returns a solution list (free variables set to zero, pivots in ascending
    column order) or an ``Unsolvable`` certificate.
    """
    if len(b) != M.nrows:
        raise ValueError("right-hand side has wrong length")
    n = M.ncols
    rows = M.rows()
    for i, bi in enumerate(b):
        if bi:
            rows[i][n] = _norm(bi)
    track = [{i: 1} for i in range(M.nrows)]
    pivots, alive = _eliminate(rows, n, markowitz=False, track=track)
    for i in sorted(alive):
        if rows[i].get(n):
            cert = Unsolvable([track[i].get(k, 0) for k in range(M.nrows)])
            assert cert.verify(M, b)
            return cert
    # back substitution, free variables zero
    v = [0] * n
    for col, i in reversed(pivots):
        r = rows[i]
        s = r.get(n, 0)
        for c, a in r.items():
            if c != col and c != n:
                s -= a * v[c]
        v[col] = _norm(Fraction(s) / r[col]) if r[col] not in (1,) else _norm(s)
    assert M.matvec(v) == [_norm(x) for x in b], "solve_linear self-check failed"
    return v


def dense_rank_fraction_free(rows: Sequence[Sequence]) -> int:
    """Bareiss fraction-free elimination on a dense integer/rational matrix.

    Independent of the sparse path; used as a cross-check oracle.
    """
    if not rows:
        return 0
    # clear denominators row by row so Bareiss runs over the integers
    A = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            den = den * x.denominator // _gcd(den, x.denominator)
        A.append([int(x * den) for x in fr])
    m, n = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                A[i][j] = (A[i][j] * A[r][c] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == m:
            break
    return r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)
