"""sl(2) homology of braid closures from the cube of resolutions, and the
transversal class psi_2.

Vertex conventions: bit 0 is the oriented smoothing (the all-0 vertex is b
concentric circles), bit 1 the other smoothing.  A vertex sits in homological
degree ``h = c_{1,-} - c_{1,+}`` (1-resolved negative minus 1-resolved
positive crossings) and carries the quantum shift ``w + c_{1,+} - c_{1,-}``.
Each circle contributes ``V = Q[x]/(x^2){-1}`` with ``deg 1 = -1`` and
``deg x = +1``.  Edges raise h by one: a positive crossing maps its
1-resolution to its 0-resolution, a negative crossing the other way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import LaurentPoly, SparseMatrixQ, Unsolvable, rank, solve_linear
from .braids import BraidWord, InvariantViolation

__all__ = [
    "H_OFFSET",
    "Q_OFFSET",
    "Vertex",
    "CubeComplex",
    "KhovanovTable",
    "PsiCertificate",
    "build_cube",
    "homology",
    "g2_extremes",
    "euler_characteristic",
    "psi2",
]

# Calibration of the homological and quantum gradings.  Both are fixed by
# requiring the unknot (closure of sigma_1 in B_2) to have homology exactly
# at (h, q) = (0, -1) and (0, 1); with the conventions above both vanish.
H_OFFSET = 0
Q_OFFSET = 0


@dataclass(frozen=True)
class Vertex:
    bits: tuple
    h: int
    shift: int
    circles: tuple  # frozensets of point ids, sorted by smallest point
    point_circle: dict = field(compare=False, hash=False)

    @property
    def ncircles(self) -> int:
        return len(self.circles)

    def q_of(self, state: int) -> int:
        return self.shift + 2 * bin(state).count("1") - self.ncircles


@dataclass
class CubeComplex:
    braid: BraidWord
    vertices: dict  # bits -> Vertex
    # generators of C^{h,q}: list of (bits, state)
    _gens: dict = field(default_factory=dict)
    _index: dict = field(default_factory=dict)

    def generators(self, h: int, q: int) -> list:
        key = (h, q)
        if key not in self._gens:
            gens = []
            for bits, v in self.vertices.items():
                if v.h != h:
                    continue
                k = (q - v.shift + v.ncircles)
                if k % 2:
                    continue
                k //= 2
                if not 0 <= k <= v.ncircles:
                    continue
                for state in range(1 << v.ncircles):
                    if bin(state).count("1") == k:
                        gens.append((bits, state))
            gens.sort()
            self._gens[key] = gens
            self._index[key] = {g: i for i, g in enumerate(gens)}
        return self._gens[key]

    def index(self, h: int, q: int) -> dict:
        self.generators(h, q)
        return self._index[(h, q)]

    def bidegrees(self) -> list:
        out = set()
        for v in self.vertices.values():
            for k in range(v.ncircles + 1):
                out.add((v.h, v.shift + 2 * k - v.ncircles))
        return sorted(out)

    def apply_d(self, bits: tuple, state: int) -> dict:
        """Image of one generator: ``{(bits', state'): coeff}``."""
        B = self.braid
        src = self.vertices[bits]
        out: dict = {}
        eps_sum = 0
        for c, letter in enumerate(B.letters):
            bit = bits[c]
            positive = letter > 0
            # edge exists when this coordinate is at the start of its edge
            if (positive and bit == 1) or (not positive and bit == 0):
                tbits = bits[:c] + (1 - bit,) + bits[c + 1:]
                sign = -1 if eps_sum % 2 else 1
                for tstate, coeff in _edge_map(src, self.vertices[tbits], state):
                    key = (tbits, tstate)
                    v = out.get(key, 0) + sign * coeff
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
            eps_sum += _eps(letter, bit)
        return out

    def differential(self, h: int, q: int) -> SparseMatrixQ:
        """Matrix of ``d: C^{h,q} -> C^{h+1,q}``."""
        src = self.generators(h, q)
        tgt_index = self.index(h + 1, q)
        entries = {}
        for col, (bits, state) in enumerate(src):
            for key, c in self.apply_d(bits, state).items():
                row = tgt_index.get(key)
                if row is None:
                    raise InvariantViolation("differential left its quantum degree")
                entries[(row, col)] = c
        return SparseMatrixQ(len(tgt_index), len(src), entries)


def _eps(letter: int, bit: int) -> int:
    """Cube coordinate of a crossing: 0 at the start of its edge, 1 at the end."""
    return (1 - bit) if letter > 0 else bit


def _edge_map(src: Vertex, tgt: Vertex, state: int):
    """Merge or split along one edge of the cube."""
    tgt_of_src = {}
    for ci, pts in enumerate(src.circles):
        tgt_of_src.setdefault(ci, set()).update(tgt.point_circle[p] for p in pts)
    src_of_tgt = {}
    for ti, pts in enumerate(tgt.circles):
        src_of_tgt.setdefault(ti, set()).update(src.point_circle[p] for p in pts)
    base = 0
    merge = split = None
    for ci in range(src.ncircles):
        ts = tgt_of_src[ci]
        if len(ts) == 2:
            split = (ci, tuple(sorted(ts)))
        else:
            (ti,) = ts
            ss = src_of_tgt[ti]
            if len(ss) == 2:
                merge = (tuple(sorted(ss)), ti)
            elif (state >> ci) & 1:
                base |= 1 << ti
    if merge is not None:
        (a, b), ti = merge
        xa, xb = (state >> a) & 1, (state >> b) & 1
        if xa and xb:
            return []
        return [(base | ((xa | xb) << ti), 1)]
    if split is not None:
        ci, (t1, t2) = split
        if (state >> ci) & 1:
            return [(base | (1 << t1) | (1 << t2), 1)]
        return [(base | (1 << t1), 1), (base | (1 << t2), 1)]
    raise InvariantViolation("edge is neither a merge nor a split")


def _circles(B: BraidWord, bits: tuple):
    b, m = B.strands, len(B.letters)
    parent = list(range((m + 1) * b))

    def pid(level, pos):
        return level * b + pos

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for level, letter in enumerate(B.letters):
        i = abs(letter) - 1
        for p in range(b):
            if p not in (i, i + 1):
                union(pid(level, p), pid(level + 1, p))
        if bits[level] == 0:
            union(pid(level, i), pid(level + 1, i))
            union(pid(level, i + 1), pid(level + 1, i + 1))
        else:
            union(pid(level, i), pid(level, i + 1))
            union(pid(level + 1, i), pid(level + 1, i + 1))
    for p in range(b):
        union(pid(m, p), pid(0, p))
    groups: dict = {}
    for x in range(len(parent)):
        groups.setdefault(find(x), set()).add(x)
    circles = tuple(sorted((frozenset(g) for g in groups.values()), key=min))
    point_circle = {p: ci for ci, c in enumerate(circles) for p in c}
    return circles, point_circle


def build_cube(B: BraidWord) -> CubeComplex:
    vertices = {}
    w = B.writhe
    for bits in product((0, 1), repeat=len(B.letters)):
        cp = sum(1 for x, e in zip(B.letters, bits) if e and x > 0)
        cm = sum(1 for x, e in zip(B.letters, bits) if e and x < 0)
        circles, pc = _circles(B, bits)
        vertices[bits] = Vertex(bits, cm - cp + H_OFFSET, w + cp - cm + Q_OFFSET, circles, pc)
    return CubeComplex(B, vertices)


@dataclass
class KhovanovTable:
    dims: dict  # (h, q) -> dim

    def rows_json(self) -> list:
        return [{"h": h, "q": q, "dim": d} for (h, q), d in sorted(self.dims.items())]

    def poincare(self) -> LaurentPoly:
        """Two-variable Poincare polynomial in (t, q) (t tracks h)."""
        return LaurentPoly(("t", "q"), {(2 * h, 2 * q): d for (h, q), d in self.dims.items()})


def homology(C: CubeComplex) -> KhovanovTable:
    dims = {}
    ranks: dict = {}

    def rk(h, q):
        if (h, q) not in ranks:
            M = C.differential(h, q)
            ranks[(h, q)] = rank(M) if M.nrows and M.ncols else 0
        return ranks[(h, q)]

    for h, q in C.bidegrees():
        n = len(C.generators(h, q))
        d = n - rk(h, q) - rk(h - 1, q)
        if d:
            dims[(h, q)] = d
    return KhovanovTable(dims)


def euler_characteristic(T: KhovanovTable) -> LaurentPoly:
    """``sum (-1)^h t^q dim H^{h,q}``."""
    acc: dict = {}
    for (h, q), d in T.dims.items():
        acc[(2 * q,)] = acc.get((2 * q,), 0) + (-d if h % 2 else d)
    return LaurentPoly(("t",), acc)


def g2_extremes(B: BraidWord, table: KhovanovTable | None = None) -> tuple[int, int]:
    T = table if table is not None else homology(build_cube(B))
    if not T.dims:
        raise InvariantViolation("empty homology")
    qs = [q for (_, q) in T.dims]
    return min(qs), max(qs)


@dataclass
class PsiCertificate:
    braid: BraidWord  # the input
    mirror: BraidWord
    cocycle: dict  # {(bits, state): coeff}
    bidegree: tuple  # (h, q)
    is_cocycle: bool
    class_zero: bool
    witness: object  # preimage dict or Unsolvable certificate

    def to_json(self) -> dict:
        if isinstance(self.witness, Unsolvable):
            wit = {"kind": "unsolvable", "y": _sparse(self.witness.y)}
        else:
            wit = {"kind": "preimage", "v": [[list(k[0]), k[1], str(c)] for k, c in sorted(self.witness.items())]}
        return {
            "braid": self.braid.format(),
            "mirror": self.mirror.format(),
            "cocycle": [[list(k[0]), k[1], str(c)] for k, c in sorted(self.cocycle.items())],
            "bidegree": list(self.bidegree),
            "is_cocycle": self.is_cocycle,
            "class_zero": self.class_zero,
            "witness": wit,
        }


def _sparse(vec):
    return [[i, str(v)] for i, v in enumerate(vec) if v]


def psi2(B: BraidWord) -> PsiCertificate:
    """Class of the all-x generator at the oriented resolution of the mirror."""
    M = B.mirror()
    C = build_cube(M)
    zero_bits = (0,) * len(M.letters)
    v0 = C.vertices[zero_bits]
    top = (1 << v0.ncircles) - 1
    h, q = v0.h, v0.q_of(top)
    if q != -B.sl:
        raise InvariantViolation("psi_2 quantum degree differs from -sl")
    phi = {(zero_bits, top): 1}
    is_cocycle = not C.apply_d(zero_bits, top)
    gens_prev = C.generators(h - 1, q)
    idx = C.index(h, q)
    target = [0] * len(idx)
    target[idx[(zero_bits, top)]] = 1
    # no shortcut when C^{h-1,q} is empty: the solver certifies that case too
    D = C.differential(h - 1, q)
    sol = solve_linear(D, target)
    if isinstance(sol, Unsolvable):
        if not sol.verify(D, target):
            raise InvariantViolation("bad unsolvability certificate")
        witness, zero = sol, False
    else:
        witness = {g: c for g, c in zip(gens_prev, sol) if c}
        zero = True
    return PsiCertificate(B, M, phi, (h, q), is_cocycle, zero, witness)
