"""Koszul matrix factorizations for resolved braids and their homology.

Two theories share one engine.  ``Hn(n)`` works over Q[x_1..x_p] with
deg x = 2 and potential x^{n+1}; ``Hax`` works over Q[a, x_1..x_p] with
deg a = (2,0), deg x = (0,2) and potential a x.  Degrees are stored as
pairs ``(a-degree, x-degree)`` in integer units; the Hn theory keeps the
a-component at 0.  Tables of homology dimensions use half-ticks (2x).

A row ``(a_r, b_r)`` contributes ``R{s0_r} -> R{s1_r} -> R{s0_r}``.  The
total complex has basis ``e_S`` for subsets S of the rows, parity |S| mod 2,
and differential::

    d(m e_S) = sum_{r not in S} (-1)^{#{j in S, j<r}} a_r m e_{S+r}
             + sum_{r in S}     (-1)^{#{j in S, j<r}} b_r m e_{S-r}

so that d^2 = sum_r a_r b_r.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Sequence

from .algebra import (
    AlgebraError,
    InexactDivisionError,
    LaurentPoly,
    MultiPoly,
    SparseMatrixQ,
    rank,
)
from .braids import InvariantViolation, Resolution, ResolvedWord

__all__ = [
    "RingSpec",
    "KoszulFactorization",
    "MFMap",
    "BigradedTable",
    "KoszulError",
    "u_polynomials",
    "pi_poly",
    "build",
    "from_rows",
    "row_transform",
    "exclude_variable",
    "auto_exclude",
    "quotient_boundary",
    "graded_homology",
    "chi_pair",
    "chi_a1",
    "local_pieces",
    "differential_matrices",
]


class KoszulError(ValueError):
    pass


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RingSpec:
    theory: str  # "Hn" or "Hax"
    n: int = 0

    def __post_init__(self):
        if self.theory not in ("Hn", "Hax"):
            raise KoszulError(f"unknown theory {self.theory!r}")
        if self.theory == "Hn" and self.n < 2:
            raise KoszulError("Hn needs n >= 2")

    @classmethod
    def Hn(cls, n: int) -> "RingSpec":
        return cls("Hn", n)

    @classmethod
    def Hax(cls) -> "RingSpec":
        return cls("Hax", 0)

    @property
    def is_ax(self) -> bool:
        return self.theory == "Hax"

    @property
    def diff_degree(self) -> tuple:
        return (1, 1) if self.is_ax else (0, self.n + 1)

    def var_degree(self, name: str) -> tuple:
        """``a`` has (2, 0), a marking ``x<k>`` has (0, 2), and ``s<k>`` stands
        for the k-th elementary symmetric function of two markings, (0, 2k)."""
        if name == "a":
            return (2, 0)
        if name.startswith("s"):
            return (0, 2 * int(name[1:]))
        return (0, 2)

    def weights(self, vars: Sequence[str]) -> dict:
        return {v: self.var_degree(v) for v in vars}

    def label(self) -> str:
        return "Hax" if self.is_ax else f"H{self.n}"


def _add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


# ---------------------------------------------------------------------------
# polynomials of the construction
# ---------------------------------------------------------------------------

_G4 = ("xi", "xj", "xk", "xl")


@lru_cache(maxsize=None)
def _newton_g(n: int) -> MultiPoly:
    """g(s, p) with g(x+y, xy) = x^{n+1} + y^{n+1}."""
    V = ("s", "p")
    s, p = MultiPoly.var(V, "s"), MultiPoly.var(V, "p")
    prev, cur = MultiPoly.const(V, 2), s
    for _ in range(n):
        prev, cur = cur, s * cur - p * prev
    return cur


def _compose(poly: MultiPoly, target_vars, mapping) -> MultiPoly:
    """Evaluate ``poly`` at polynomials over ``target_vars``."""
    out = MultiPoly.zero(target_vars)
    vals = [mapping[v] for v in poly.vars]
    for m, c in poly.terms.items():
        t = MultiPoly.const(target_vars, c)
        for e, v in zip(m, vals):
            if e:
                t = t * v ** e
        out = out + t
    return out


@lru_cache(maxsize=None)
def u_polynomials(n: int) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """``(g, u_1, u_2)``; u's are in the generic variables xi, xj, xk, xl."""
    if n < 2:
        raise KoszulError("n must be >= 2")
    xi, xj, xk, xl = (MultiPoly.var(_G4, v) for v in _G4)
    g = _newton_g(n)
    s_top, p_top = xi + xj, xi * xj
    s_bot, p_bot = xk + xl, xk * xl
    try:
        u1 = (_compose(g, _G4, {"s": s_top, "p": p_top}) - _compose(g, _G4, {"s": s_bot, "p": p_top})).divide_exact(
            s_top - s_bot
        )
        u2 = (_compose(g, _G4, {"s": s_bot, "p": p_top}) - _compose(g, _G4, {"s": s_bot, "p": p_bot})).divide_exact(
            p_top - p_bot
        )
    except InexactDivisionError as exc:  # pragma: no cover - would be a bug
        raise InvariantViolation(f"u-polynomial division failed: {exc}") from exc
    return g, u1, u2


@lru_cache(maxsize=None)
def chi_a1(n: int) -> MultiPoly:
    """``a_1 = -u_2 + (u_1 + x_i u_2 - pi_jl) / (x_i - x_k)``."""
    _, u1, u2 = u_polynomials(n)
    xi, xk = MultiPoly.var(_G4, "xi"), MultiPoly.var(_G4, "xk")
    pjl = pi_poly(n, _G4, "xj", "xl")
    try:
        return -u2 + (u1 + xi * u2 - pjl).divide_exact(xi - xk)
    except InexactDivisionError as exc:
        raise InvariantViolation(f"a_1 division inexact for n={n}") from exc


def _rename(poly: MultiPoly, target_vars, names: dict) -> MultiPoly:
    """Rename generic variables (several may map to the same target)."""
    idx = [target_vars.index(names[v]) for v in poly.vars]
    t: dict = {}
    for m, c in poly.terms.items():
        nm = [0] * len(target_vars)
        for e, j in zip(m, idx):
            nm[j] += e
        nm = tuple(nm)
        t[nm] = t.get(nm, 0) + c
    return MultiPoly(target_vars, t)


def pi_poly(n: int, vars, i: str, j: str) -> MultiPoly:
    """``pi_ij = x_i^n + x_i^{n-1} x_j + ... + x_j^n``."""
    xi, xj = MultiPoly.var(vars, i), MultiPoly.var(vars, j)
    return sum((xi ** (n - k) * xj ** k for k in range(n + 1)), MultiPoly.zero(vars))


# ---------------------------------------------------------------------------
# factorizations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KoszulFactorization:
    ring: RingSpec
    vars: tuple
    rows: tuple  # of (a, b) MultiPoly pairs
    s0: tuple  # even shifts per row, (a, x) pairs
    s1: tuple  # odd shifts per row
    shift: tuple = (0, 0)  # global shift
    boundary: tuple = ()  # (variable, +1 exit / -1 entry)
    labels: tuple = ()
    meta: tuple = ()  # (("strands", b), ("length", m))

    def __post_init__(self):
        k = len(self.rows)
        if not (len(self.s0) == len(self.s1) == k):
            raise KoszulError("one shift pair per row")
        if not self.labels:
            object.__setattr__(self, "labels", ("row",) * k)
        self.check_homogeneous()

    # bookkeeping --------------------------------------------------------
    @property
    def nrows(self) -> int:
        return len(self.rows)

    def meta_get(self, key, default=None):
        return dict(self.meta).get(key, default)

    def row_degrees(self, r: int) -> tuple[tuple, tuple]:
        """Degrees forced on (a_r, b_r) by the shifts."""
        N = self.ring.diff_degree
        return _add(N, _sub(self.s0[r], self.s1[r])), _add(N, _sub(self.s1[r], self.s0[r]))

    def check_homogeneous(self) -> None:
        w = self.ring.weights(self.vars)
        for r, (a, b) in enumerate(self.rows):
            da, db = self.row_degrees(r)
            for poly, want, nm in ((a, da, "a"), (b, db, "b")):
                try:
                    d = poly.homogeneous_degree(w)
                except AlgebraError as exc:
                    raise KoszulError(f"row {r}: {nm} not homogeneous") from exc
                if d is not None and d != want:
                    raise KoszulError(f"row {r}: deg {nm} = {d}, expected {want}")

    def potential(self) -> MultiPoly:
        total = MultiPoly.zero(self.vars)
        for a, b in self.rows:
            total = total + a * b
        return total

    def boundary_potential(self) -> MultiPoly:
        """``sum +- x^{n+1}`` (Hn) or ``sum +- a x`` (Hax) over open ends."""
        total = MultiPoly.zero(self.vars)
        for v, sign in self.boundary:
            x = MultiPoly.var(self.vars, v)
            if self.ring.is_ax:
                total = total + sign * MultiPoly.var(self.vars, "a") * x
            else:
                total = total + sign * x ** (self.ring.n + 1)
        return total

    def basis_degree(self, S: int) -> tuple:
        d = self.shift
        for r in range(self.nrows):
            d = _add(d, self.s1[r] if (S >> r) & 1 else self.s0[r])
        return d

    def used_vars(self) -> tuple:
        used = set(v for v, _ in self.boundary)
        for a, b in self.rows:
            used |= a.variables_used() | b.variables_used()
        return tuple(v for v in self.vars if v in used or v == "a")

    def compact(self) -> "KoszulFactorization":
        """Drop variables that no longer occur."""
        vs = self.used_vars()
        if vs == self.vars:
            return self
        rows = tuple((a.with_vars(vs), b.with_vars(vs)) for a, b in self.rows)
        return replace(self, vars=vs, rows=rows)

    def to_json(self) -> list:
        out = []
        for r, (a, b) in enumerate(self.rows):
            out.append(
                {
                    "a": str(a),
                    "b": str(b),
                    "shift": list(self.s1[r]),
                    "even_shift": list(self.s0[r]),
                    "label": self.labels[r],
                }
            )
        return out


def _var_order(v: str):
    return (0, 0) if v == "a" else ({"x": 1, "s": 2}.get(v[0], 3), int(v[1:]))


def build(mu, ring: RingSpec, closed: bool = True) -> KoszulFactorization:
    """Factorization of a resolved braid (or a cube vertex).

    Strand p carries bottom marking ``x_p``.  Each tau_i adds fresh top
    markings on strands i, i+1.  The closure adds one arc per strand from
    its top marking back to ``x_p``; an untouched strand becomes a circle
    row.  With ``closed=False`` each strand instead ends in a fresh exit
    marking and the bottom markings are entries.
    """
    if isinstance(mu, Resolution):
        mu = mu.word
    if not isinstance(mu, ResolvedWord):
        raise KoszulError("build needs a ResolvedWord or Resolution")
    b = mu.strands
    nv = b + 2 * len(mu.letters) + (0 if closed else b)
    xs = tuple(f"x{k}" for k in range(1, nv + 1))
    vars = (("a",) if ring.is_ax else ()) + xs
    X = {v: MultiPoly.var(vars, v) for v in xs}
    A = MultiPoly.var(vars, "a") if ring.is_ax else None
    n = ring.n
    rows, s0, s1, labels = [], [], [], []
    nxt = b + 1
    cur = [f"x{p}" for p in range(1, b + 1)]
    if not ring.is_ax:
        _, u1, u2 = u_polynomials(n)
    for i in mu.letters:
        k, l = cur[i - 1], cur[i]
        ti, tj = f"x{nxt}", f"x{nxt + 1}"
        nxt += 2
        lin = X[ti] + X[tj] - X[k] - X[l]
        quad = X[ti] * X[tj] - X[k] * X[l]
        if ring.is_ax:
            rows += [(A, lin), (MultiPoly.zero(vars), quad)]
            s0 += [(0, 0), (0, 0)]
            s1 += [(-1, 1), (-1, 3)]
        else:
            names = {"xi": ti, "xj": tj, "xk": k, "xl": l}
            rows += [(_rename(u1, vars, names), lin), (_rename(u2, vars, names), quad)]
            s0 += [(0, -1), (0, 0)]
            s1 += [(0, -n), (0, 3 - n)]
        labels += ["wide1", "wide2"]
        cur[i - 1], cur[i] = ti, tj
    boundary = []
    for p in range(b):
        start = cur[p]
        if closed:
            end = f"x{p + 1}"
        else:
            end = f"x{nxt}"
            nxt += 1
            boundary += [(f"x{p + 1}", -1), (end, +1)]
        arc_a = A if ring.is_ax else pi_poly(n, vars, end, start)
        rows.append((arc_a, X[end] - X[start]))
        s0.append((0, 0))
        s1.append((-1, 1) if ring.is_ax else (0, 1 - n))
        labels.append("circle" if start == end else "arc")
    F = KoszulFactorization(
        ring,
        vars,
        tuple(rows),
        tuple(s0),
        tuple(s1),
        (0, 0),
        tuple(sorted(boundary, key=lambda t: _var_order(t[0]))),
        tuple(labels),
        (("strands", b), ("length", len(mu.letters))),
    )
    if F.potential() != F.boundary_potential():
        raise InvariantViolation("potential does not match the boundary")
    return F


def from_rows(ring: RingSpec, vars, rows, s1, s0=None, boundary=(), shift=(0, 0)) -> KoszulFactorization:
    """Direct constructor for hand-written factorizations."""
    rows = tuple(rows)
    s0 = tuple(s0) if s0 is not None else ((0, 0),) * len(rows)
    return KoszulFactorization(ring, tuple(vars), rows, s0, tuple(s1), shift, tuple(boundary))


# ---------------------------------------------------------------------------
# transformations
# ---------------------------------------------------------------------------


def row_transform(F: KoszulFactorization, i: int, j: int, lam: MultiPoly) -> KoszulFactorization:
    """``(a_i, b_i), (a_j, b_j) -> (a_i + lam a_j, b_i), (a_j, b_j - lam b_i)``."""
    if i == j:
        raise KoszulError("row_transform needs i != j")
    if lam.vars != F.vars:
        lam = lam.with_vars(F.vars)
    if not lam.is_zero():
        want = _sub(F.row_degrees(i)[0], F.row_degrees(j)[0])
        try:
            d = lam.homogeneous_degree(F.ring.weights(F.vars))
        except AlgebraError as exc:
            raise KoszulError("lambda is not homogeneous") from exc
        if d != want:
            raise KoszulError(f"lambda has degree {d}, expected {want}")
    rows = list(F.rows)
    ai, bi = rows[i]
    aj, bj = rows[j]
    rows[i] = (ai + lam * aj, bi)
    rows[j] = (aj, bj - lam * bi)
    G = replace(F, rows=tuple(rows))
    if G.potential() != F.potential():  # pragma: no cover - algebraic identity
        raise InvariantViolation("row transform changed the potential")
    return G


def _linear_solution(b: MultiPoly, v: str):
    """If ``b = c (v - f)`` with c = +-1 and f free of v, return (c, f)."""
    k = b.vars.index(v)
    c = None
    rest = {}
    for m, coef in b.terms.items():
        if m[k]:
            if m[k] != 1 or any(e for j, e in enumerate(m) if j != k):
                return None
            c = coef
        else:
            rest[m] = coef
    if c not in (1, -1):
        return None
    f = MultiPoly(b.vars, {m: -coef / c for m, coef in rest.items()})
    return c, f


def exclude_variable(F: KoszulFactorization, r: int, v: str) -> KoszulFactorization:
    """Remove row r with ``b_r = +-(v - f)`` and substitute ``v := f``.

    The kept summand sits on the even generator of row r, so the global
    shift absorbs ``s0_r`` and parities are unchanged.
    """
    if v in {w for w, _ in F.boundary}:
        raise KoszulError(f"{v} is a boundary marking")
    if v == "a" or v not in F.vars:
        raise KoszulError(f"cannot exclude {v}")
    sol = _linear_solution(F.rows[r][1], v)
    if sol is None:
        raise KoszulError(f"row {r} is not of the form +-({v} - f)")
    _, f = sol
    rows, s0, s1, labels = [], [], [], []
    for k, (a, b) in enumerate(F.rows):
        if k == r:
            continue
        rows.append((a.substitute({v: f}), b.substitute({v: f})))
        s0.append(F.s0[k])
        s1.append(F.s1[k])
        labels.append(F.labels[k])
    G = KoszulFactorization(
        F.ring, F.vars, tuple(rows), tuple(s0), tuple(s1), _add(F.shift, F.s0[r]), F.boundary, tuple(labels), F.meta
    )
    return G.compact()


_EXCLUDE_ORDER = {"arc": 0, "wide1": 1, "row": 2}


def auto_exclude(F: KoszulFactorization) -> KoszulFactorization:
    """Exclude variables greedily: arcs first, then linear wide-edge rows."""
    bnd = {w for w, _ in F.boundary}
    while True:
        best = None
        for r, (_, b) in enumerate(F.rows):
            pri = _EXCLUDE_ORDER.get(F.labels[r])
            if pri is None or b.is_zero():
                continue
            cands = [v for v in sorted(b.variables_used(), key=_var_order, reverse=True) if v not in bnd and v != "a"]
            for v in cands:
                if _linear_solution(b, v) is not None:
                    if best is None or pri < best[0]:
                        best = (pri, r, v)
                    break
        if best is None:
            return F
        F = exclude_variable(F, best[1], best[2])


def quotient_boundary(F: KoszulFactorization) -> KoszulFactorization:
    """Set the open-end markings to zero."""
    if not F.boundary:
        return F
    zero = {v: 0 for v, _ in F.boundary}
    rows = tuple((a.substitute(zero), b.substitute(zero)) for a, b in F.rows)
    G = replace(F, rows=rows, boundary=())
    return G.compact()


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------


@dataclass
class BigradedTable:
    """Dimensions keyed by ``(z2, a_half, x_half)``."""

    theory: str
    dims: dict = field(default_factory=dict)
    window: dict = field(default_factory=dict)
    warning: str | None = None
    parities: tuple = ()

    @property
    def concentrated(self) -> bool:
        return len(self.parities) <= 1

    def total_by_x(self) -> LaurentPoly:
        """Graded dimension in q (half-ticks of the x-degree)."""
        acc: dict = {}
        for (_, _, xh), d in self.dims.items():
            acc[(xh,)] = acc.get((xh,), 0) + d
        return LaurentPoly(("q",), acc)

    def a_support(self) -> set:
        return {ah // 2 for (_, ah, _), d in self.dims.items() if d}

    def rows_json(self) -> list:
        return [{"z2": z, "a": a, "x": x, "dim": d} for (z, a, x), d in sorted(self.dims.items())]


def _x_monomials(nx: int, deg: int):
    if deg < 0:
        return []
    if nx == 0:
        return [()] if deg == 0 else []
    out = []
    for combo in itertools.combinations_with_replacement(range(nx), deg):
        e = [0] * nx
        for c in combo:
            e[c] += 1
        out.append(tuple(e))
    return out


def _int_terms(p: MultiPoly) -> list:
    return [(m, c.numerator if c.denominator == 1 else c) for m, c in p.terms.items()]


class _Complex:
    """Per-degree slices of the total complex of a closed factorization."""

    def __init__(self, F: KoszulFactorization):
        self.F = F
        self.ax = F.ring.is_ax
        self.N = F.ring.diff_degree
        self.k = F.nrows
        self.nx = len(F.vars) - (1 if self.ax else 0)
        self.rows = [(_int_terms(a), _int_terms(b)) for a, b in F.rows]
        self.sdeg = [F.basis_degree(S) for S in range(1 << self.k)]
        self._basis: dict = {}
        self._rank: dict = {}

    def basis(self, eps: int, D: tuple) -> list:
        key = (eps, D)
        got = self._basis.get(key)
        if got is not None:
            return got
        out = []
        for S in range(1 << self.k):
            if bin(S).count("1") % 2 != eps:
                continue
            da, dx = _sub(D, self.sdeg[S])
            if dx < 0 or dx % 2 or da < 0 or da % 2:
                continue
            if not self.ax and da:
                continue
            for xm in _x_monomials(self.nx, dx // 2):
                out.append((S, ((da // 2,) + xm) if self.ax else xm))
        self._basis[key] = out
        return out

    def rank_out(self, eps: int, D: tuple) -> int:
        key = (eps, D)
        if key in self._rank:
            return self._rank[key]
        src = self.basis(eps, D)
        tgt = self.basis(1 - eps, _add(D, self.N))
        if not src or not tgt:
            self._rank[key] = 0
            return 0
        index = {bm: i for i, bm in enumerate(tgt)}
        entries: dict = {}
        for col, (S, m) in enumerate(src):
            for r in range(self.k):
                bit = 1 << r
                sign = -1 if bin(S & (bit - 1)).count("1") % 2 else 1
                T, terms = (S & ~bit, self.rows[r][1]) if S & bit else (S | bit, self.rows[r][0])
                for e, c in terms:
                    mm = tuple(x + y for x, y in zip(m, e))
                    row = index[(T, mm)]
                    v = entries.get((row, col), 0) + sign * c
                    if v:
                        entries[(row, col)] = v
                    else:
                        entries.pop((row, col), None)
        rk = rank(SparseMatrixQ(len(tgt), len(src), entries))
        self._rank[key] = rk
        return rk

    def dim_h(self, eps: int, D: tuple) -> int:
        n = len(self.basis(eps, D))
        if not n:
            return 0
        return n - self.rank_out(eps, D) - self.rank_out(1 - eps, _sub(D, self.N))


def graded_homology(
    F: KoszulFactorization,
    window: tuple | None = None,
    x_window: tuple | None = None,
    exclude: bool = True,
    max_extend: int = 40,
) -> BigradedTable:
    """Homology dimensions of a closed factorization, degree by degree.

    Hn: ``window`` is an (lo, hi) range of x-degrees; by default it starts
    from the bound ``(n-1) b + m`` and is widened until two consecutive empty
    shells lie beyond the current support.  Hax: a-degrees are scanned over
    the full range allowed by the row count; ``x_window`` bounds x-degrees.
    """
    if F.boundary:
        raise KoszulError("graded_homology needs a closed factorization (use quotient_boundary)")
    if not F.potential().is_zero():
        raise KoszulError("potential is not zero")
    G = auto_exclude(F) if exclude else F
    cx = _Complex(G)
    table = BigradedTable(F.ring.label())
    if F.ring.is_ax:
        k = G.nrows
        a_lo, a_hi = G.shift[0] - k, G.shift[0] + k
        if x_window is None:
            lo = min(cx.sdeg[S][1] for S in range(1 << k)) if k else G.shift[1]
            x_window = (lo, lo + 4 * k + 8)
        table.window = {"a": (a_lo, a_hi), "x": tuple(x_window)}
        for eps in (0, 1):
            for da in range(a_lo, a_hi + 1):
                for dx in range(x_window[0], x_window[1] + 1):
                    d = cx.dim_h(eps, (da, dx))
                    if d:
                        table.dims[(eps, 2 * da, 2 * dx)] = d
    else:
        if window is None:
            b = F.meta_get("strands", 0)
            m = F.meta_get("length", 0)
            bound = (F.ring.n - 1) * b + m
            lo, hi = -bound, bound
            auto = True
        else:
            lo, hi = window
            auto = False
        found: dict = {}

        def scan(D):
            for eps in (0, 1):
                d = cx.dim_h(eps, (0, D))
                if d:
                    found[(eps, 0, 2 * D)] = d
            return any(k[2] == 2 * D for k in found)

        for D in range(lo, hi + 1):
            scan(D)
        if auto:
            # widen until four consecutive integer degrees (two shells) are empty
            for direction in (1, -1):
                D = hi if direction == 1 else lo
                empty = 0
                steps = 0
                while empty < 4:
                    D += direction
                    steps += 1
                    empty = 0 if scan(D) else empty + 1
                    if steps > max_extend:
                        table.warning = "window too small to certify finiteness"
                        break
                if direction == 1:
                    hi = D
                else:
                    lo = D
        table.dims = found
        table.window = {"x": (lo, hi)}
    table.parities = tuple(sorted({k[0] for k in table.dims}))
    if not F.ring.is_ax and not table.concentrated:
        raise InvariantViolation("Hn homology is not concentrated in one Z2 degree")
    return table


# ---------------------------------------------------------------------------
# maps of factorizations
# ---------------------------------------------------------------------------


def _parity_basis(k: int, eps: int) -> list:
    return [S for S in range(1 << k) if bin(S).count("1") % 2 == eps]


def differential_matrices(F: KoszulFactorization):
    """``(d0, d1)`` as nested lists of MultiPoly; columns index the source
    parity basis, rows the target, each basis ordered by subset bitmask."""
    k = F.nrows
    even, odd = _parity_basis(k, 0), _parity_basis(k, 1)
    zero = MultiPoly.zero(F.vars)

    def mat(src, tgt):
        idx = {S: i for i, S in enumerate(tgt)}
        M = [[zero for _ in src] for _ in tgt]
        for c, S in enumerate(src):
            for r in range(k):
                bit = 1 << r
                sign = -1 if bin(S & (bit - 1)).count("1") % 2 else 1
                T, p = (S & ~bit, F.rows[r][1]) if S & bit else (S | bit, F.rows[r][0])
                M[idx[T]][c] = M[idx[T]][c] + sign * p
        return M

    return mat(even, odd), mat(odd, even)


def _matmul(A, B, zero):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), zero) for j in range(len(B[0]))] for i in range(len(A))]


@dataclass(frozen=True)
class MFMap:
    source: KoszulFactorization
    target: KoszulFactorization
    even: tuple  # matrix target-even x source-even
    odd: tuple
    degree: tuple

    def commutator_residuals(self):
        """``(d0_T f0 - f1 d0_S, d1_T f1 - f0 d1_S)``."""
        z = MultiPoly.zero(self.source.vars)
        s0, s1 = differential_matrices(self.source)
        t0, t1 = differential_matrices(self.target)
        f0 = [list(r) for r in self.even]
        f1 = [list(r) for r in self.odd]
        r0 = _matsub(_matmul(t0, f0, z), _matmul(f1, s0, z))
        r1 = _matsub(_matmul(t1, f1, z), _matmul(f0, s1, z))
        return r0, r1

    def commutes(self) -> bool:
        r0, r1 = self.commutator_residuals()
        return all(p.is_zero() for row in r0 + r1 for p in row)

    def homogeneous(self) -> bool:
        w = self.source.ring.weights(self.source.vars)
        k = self.source.nrows
        for eps, M in ((0, self.even), (1, self.odd)):
            src = _parity_basis(k, eps)
            tgt = _parity_basis(self.target.nrows, eps)
            for r, T in enumerate(tgt):
                for c, S in enumerate(src):
                    p = M[r][c]
                    if p.is_zero():
                        continue
                    try:
                        d = p.homogeneous_degree(w)
                    except AlgebraError:
                        return False
                    want = _sub(_add(self.source.basis_degree(S), self.degree), self.target.basis_degree(T))
                    if d != want:
                        return False
        return True

    def compose(self, other: "MFMap") -> "MFMap":
        """``self o other``."""
        z = MultiPoly.zero(self.source.vars)
        return MFMap(
            other.source,
            self.target,
            tuple(map(tuple, _matmul([list(r) for r in self.even], [list(r) for r in other.even], z))),
            tuple(map(tuple, _matmul([list(r) for r in self.odd], [list(r) for r in other.odd], z))),
            _add(self.degree, other.degree),
        )

    def is_scalar(self, p: MultiPoly) -> bool:
        for M in (self.even, self.odd):
            for r, row in enumerate(M):
                for c, e in enumerate(row):
                    if e != (p if r == c else MultiPoly.zero(p.vars)):
                        return False
        return True


def _matsub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


_LOCAL = ("x1", "x2", "x3", "x4")  # x_i, x_j (top), x_k, x_l (bottom)


def local_pieces(ring: RingSpec):
    """Open factorizations of the two resolutions of one crossing:
    ``Gamma_0`` (arcs x_k -> x_i, x_l -> x_j) and ``Gamma_1`` (wide edge)."""
    vars = (("a",) if ring.is_ax else ()) + _LOCAL
    xi, xj, xk, xl = (MultiPoly.var(vars, v) for v in _LOCAL)
    bnd = (("x1", 1), ("x2", 1), ("x3", -1), ("x4", -1))
    if ring.is_ax:
        A = MultiPoly.var(vars, "a")
        g0 = from_rows(ring, vars, [(A, xi - xk), (A, xj - xl)], [(-1, 1), (-1, 1)], boundary=bnd)
        g1 = from_rows(
            ring, vars, [(A, xi + xj - xk - xl), (MultiPoly.zero(vars), xi * xj - xk * xl)], [(-1, 1), (-1, 3)], boundary=bnd
        )
    else:
        n = ring.n
        g0 = from_rows(
            ring,
            vars,
            [(pi_poly(n, vars, "x1", "x3"), xi - xk), (pi_poly(n, vars, "x2", "x4"), xj - xl)],
            [(0, 1 - n), (0, 1 - n)],
            boundary=bnd,
        )
        _, u1, u2 = u_polynomials(n)
        names = dict(zip(_G4, _LOCAL))
        g1 = from_rows(
            ring,
            vars,
            [(_rename(u1, vars, names), xi + xj - xk - xl), (_rename(u2, vars, names), xi * xj - xk * xl)],
            [(0, -n), (0, 3 - n)],
            s0=[(0, -1), (0, 0)],
            boundary=bnd,
        )
    return g0, g1


def chi_pair(ring: RingSpec):
    """``(chi_0: Gamma_0 -> Gamma_1, chi_1: Gamma_1 -> Gamma_0)``.

    Even bases are ``(e_0, e_12)``, odd bases ``(e_1, e_2)``.
    """
    g0, g1 = local_pieces(ring)
    vars = g0.vars
    xj, xk = MultiPoly.var(vars, "x2"), MultiPoly.var(vars, "x3")
    one, zero = MultiPoly.const(vars, 1), MultiPoly.zero(vars)
    d = xk - xj
    if ring.is_ax:
        a1 = zero
        deg0, deg1 = (0, 2), (0, 0)
    else:
        a1 = _rename(chi_a1(ring.n), vars, dict(zip(_G4, _LOCAL)))
        deg0 = deg1 = (0, 1)
    U0 = ((d, zero), (-a1, one))
    U1 = ((xk, -xj), (-one, one))
    V0 = ((one, zero), (a1, d))
    V1 = ((one, xj), (one, xk))
    chi0 = MFMap(g0, g1, U0, U1, deg0)
    chi1 = MFMap(g1, g0, V0, V1, deg1)
    for f in (chi0, chi1):
        if not f.commutes():
            raise InvariantViolation("chi map does not commute with the differentials")
    return chi0, chi1
