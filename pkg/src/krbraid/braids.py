"""Braid words, Markov moves, cube resolutions and resolved-word reductions.

Letters of a ``BraidWord`` are signed ints: ``+i`` is sigma_i (a positive
crossing), ``-i`` is sigma_i^{-1}.  A ``ResolvedWord`` holds unsigned tau
indices.  Text formats::

    b=3; w= s1 -s2 s1        braid word
    b=3; w= t1 t2 t1         resolved word
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "BraidParseError",
    "InvariantViolation",
    "BraidWord",
    "ResolvedWord",
    "Resolution",
    "QuasiPositiveWitness",
    "ReductionStep",
    "parse_braid",
    "parse_resolved",
    "free_reduce",
    "verify_witness",
    "enumerate_resolutions",
    "find_reduction",
    "replay_isotopies",
    "canonical_key",
    "canonical_resolved_key",
    "all_braid_words",
    "all_resolved_words",
]


class BraidParseError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    """An internal mathematical invariant failed; always a bug."""


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidParseError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise BraidParseError(f"generator index {abs(x)} invalid for b={self.strands}")

    # statistics
    @property
    def c_plus(self) -> int:
        return sum(1 for x in self.letters if x > 0)

    @property
    def c_minus(self) -> int:
        return sum(1 for x in self.letters if x < 0)

    @property
    def writhe(self) -> int:
        return self.c_plus - self.c_minus

    @property
    def sl(self) -> int:
        """Self-linking number of the transversal closure, ``w - b``."""
        return self.writhe - self.strands

    def stats(self) -> tuple[int, int, int, int, int]:
        return (self.writhe, self.strands, self.c_plus, self.c_minus, self.sl)

    def __len__(self):
        return len(self.letters)

    # Markov calculus
    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in self.letters))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def conjugate(self, eta: Sequence[int]) -> "BraidWord":
        """``eta^{-1} * self * eta``."""
        eta = tuple(eta)
        inv = tuple(-x for x in reversed(eta))
        return BraidWord(self.strands, inv + self.letters + eta)

    def rotate(self, k: int) -> "BraidWord":
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.strands, self.letters[k:] + self.letters[:k])

    def stabilize_pos(self) -> "BraidWord":
        return BraidWord(self.strands + 1, self.letters + (self.strands,))

    def stabilize_neg(self) -> "BraidWord":
        return BraidWord(self.strands + 1, self.letters + (-self.strands,))

    def destabilize(self) -> "BraidWord":
        top = self.strands - 1
        uses = [x for x in self.letters if abs(x) == top]
        if not self.letters or abs(self.letters[-1]) != top or len(uses) != 1:
            raise BraidParseError(
                f"destabilize needs a single sigma_{top}^(+-1) as the last letter"
            )
        return BraidWord(self.strands - 1, self.letters[:-1])

    def free_reduce(self) -> "BraidWord":
        return BraidWord(self.strands, free_reduce(self.letters))

    def format(self) -> str:
        toks = " ".join(f"s{x}" if x > 0 else f"-s{-x}" for x in self.letters)
        return f"b={self.strands}; w= {toks}".rstrip()

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class ResolvedWord:
    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidParseError("a resolved braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if not (1 <= x < self.strands):
                raise BraidParseError(f"tau index {x} invalid for b={self.strands}")

    @property
    def weight(self) -> int:
        return sum(self.letters)

    @property
    def m(self) -> int:
        return len(self.letters)

    def __len__(self):
        return len(self.letters)

    def format(self) -> str:
        toks = " ".join(f"t{x}" for x in self.letters)
        return f"b={self.strands}; w= {toks}".rstrip()

    def __str__(self):
        return self.format()


def free_reduce(letters: Iterable[int]) -> tuple:
    """Cancel adjacent ``x, -x`` pairs (stack reduction, not cyclic)."""
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _cyclic_reduce(letters: Sequence[int]) -> tuple:
    w = list(free_reduce(letters))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_HEADER = re.compile(r"^\s*b\s*=\s*(\d+)\s*;\s*w\s*=(.*)$")


def _parse(text: str, resolved: bool):
    m = _HEADER.match(text)
    if not m:
        raise BraidParseError(f"expected 'b=<int>; w= ...', got {text!r}")
    b = int(m.group(1))
    letters = []
    tok_re = re.compile(r"^t(\d+)$") if resolved else re.compile(r"^(-?)s(\d+)$")
    for tok in m.group(2).split():
        t = tok_re.match(tok)
        if not t:
            raise BraidParseError(f"bad token {tok!r}")
        if resolved:
            letters.append(int(t.group(1)))
        else:
            i = int(t.group(2))
            if i == 0:
                raise BraidParseError("generator index 0")
            letters.append(-i if t.group(1) else i)
    if resolved:
        return ResolvedWord(b, tuple(letters))
    return BraidWord(b, tuple(letters))


def parse_braid(text: str) -> BraidWord:
    return _parse(text, resolved=False)


def parse_resolved(text: str) -> ResolvedWord:
    return _parse(text, resolved=True)


# ---------------------------------------------------------------------------
# quasi-positivity witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuasiPositiveWitness:
    """Factors ``(mu_k, i_k)`` of ``prod mu_k sigma_{i_k} mu_k^{-1}``."""

    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self, "factors", tuple((tuple(int(x) for x in mu), int(i)) for mu, i in self.factors)
        )

    def expand(self) -> tuple:
        out: list[int] = []
        for mu, i in self.factors:
            out.extend(mu)
            out.append(i)
            out.extend(-x for x in reversed(mu))
        return tuple(out)


def verify_witness(B: BraidWord, witness: QuasiPositiveWitness) -> bool:
    if any(i <= 0 for _, i in witness.factors):
        return False
    if B.writhe != len(witness.factors):
        # exponent sum is a conjugacy invariant: each factor contributes +1
        return False
    try:
        expanded = BraidWord(B.strands, witness.expand())
    except BraidParseError:
        return False
    return free_reduce(expanded.letters) == free_reduce(B.letters)


# ---------------------------------------------------------------------------
# resolutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Resolution:
    """A vertex of the resolution cube.

    ``bits[p]`` is 0 for the oriented smoothing of crossing p and 1 for the
    wide edge.  ``hdeg`` is the homological degree: a 1-resolved positive
    crossing contributes -1, a 1-resolved negative crossing +1.
    """

    parent: BraidWord
    bits: tuple
    word: ResolvedWord = field(compare=False)
    c_plus: int = field(compare=False)
    c_minus: int = field(compare=False)
    hdeg: int = field(compare=False)

    def shift(self, n: int) -> int:
        """Quantum shift p_Gamma = (n-1) w + c_{Gamma,+} - c_{Gamma,-}."""
        return (n - 1) * self.parent.writhe + self.c_plus - self.c_minus


def resolution(B: BraidWord, bits: Sequence[int]) -> Resolution:
    bits = tuple(int(x) for x in bits)
    if len(bits) != len(B.letters):
        raise ValueError("one bit per crossing")
    wides = tuple(abs(x) for x, e in zip(B.letters, bits) if e)
    cp = sum(1 for x, e in zip(B.letters, bits) if e and x > 0)
    cm = sum(1 for x, e in zip(B.letters, bits) if e and x < 0)
    return Resolution(B, bits, ResolvedWord(B.strands, wides), cp, cm, cm - cp)


def enumerate_resolutions(B: BraidWord, n: int = 2) -> list[Resolution]:
    if n < 2:
        raise ValueError("n must be >= 2")
    return [resolution(B, bits) for bits in itertools.product((0, 1), repeat=len(B.letters))]


# ---------------------------------------------------------------------------
# resolved-word reductions
# ---------------------------------------------------------------------------


_SPAN = {"unique_max": 1, "square": 2, "triangle": 3}


@dataclass(frozen=True)
class ReductionStep:
    """One rewriting step for a closed resolved word.

    ``kind`` is ``"unique_max"``, ``"square"`` or ``"triangle"``; ``index`` is
    the i of the rule (``tau_i`` for unique_max and square, ``tau_i tau_{i-1}
    tau_i`` for triangle).  Replaying ``isotopies`` on the source yields
    ``word``, which carries the pattern at ``position``.
    """

    kind: str
    index: int
    position: int
    source: ResolvedWord
    word: ResolvedWord
    isotopies: tuple

    @property
    def span(self) -> int:
        return _SPAN[self.kind]

    @property
    def nu(self) -> tuple:
        """The complement of the pattern, read cyclically after it."""
        w = self.word.letters
        p, k = self.position, self.span
        return w[p + k:] + w[:p]


def replay_isotopies(letters: Sequence[int], ops: Iterable[tuple]) -> tuple:
    """Apply recorded isotopies.  ``("rotate", k)`` moves the first k letters
    to the end (type II); ``("swap", p)`` exchanges positions p, p+1, allowed
    only for far-apart indices (type I)."""
    w = list(letters)
    for op, arg in ops:
        if op == "rotate":
            if w:
                k = arg % len(w)
                w = w[k:] + w[:k]
        elif op == "swap":
            a, b = w[arg], w[arg + 1]
            if abs(a - b) <= 1:
                raise InvariantViolation(f"illegal type (I) swap of {a},{b}")
            w[arg], w[arg + 1] = b, a
        else:
            raise ValueError(f"unknown isotopy {op}")
    return tuple(w)


class _Work:
    def __init__(self, letters):
        self.w = list(letters)
        self.ops: list[tuple] = []

    def rotate(self, k):
        if self.w and k % len(self.w):
            k %= len(self.w)
            self.w = self.w[k:] + self.w[:k]
            self.ops.append(("rotate", k))

    def swap(self, p):
        a, b = self.w[p], self.w[p + 1]
        if abs(a - b) <= 1:
            raise InvariantViolation("attempted a non-commuting swap")
        self.w[p], self.w[p + 1] = b, a
        self.ops.append(("swap", p))


def _expose(work: _Work, lo: int, hi: int, j: int) -> tuple[str, int, int]:
    """Segment ``w[lo] == w[hi] == j`` with interior letters < j.

    Returns (kind, index, start position) of an exposed square/triangle.
    """
    w = work.w
    inner = [p for p in range(lo + 1, hi) if w[p] == j - 1]
    if len(inner) == 0:
        # everything inside commutes with tau_j: slide the left tau_j right
        while lo + 1 < hi:
            work.swap(lo)
            lo += 1
        return "square", j, lo
    if len(inner) == 1:
        r = inner[0]
        while lo + 1 < r:
            work.swap(lo)
            lo += 1
        while hi - 1 > r:
            work.swap(hi - 1)
            hi -= 1
        return "triangle", j, lo
    return _expose(work, inner[0], inner[1], j - 1)


def _linear_pattern(w: Sequence[int]):
    for p in range(len(w) - 1):
        if w[p] == w[p + 1]:
            return "square", w[p], p
    for p in range(len(w) - 2):
        if w[p] == w[p + 2] and w[p + 1] == w[p] - 1:
            return "triangle", w[p], p
    return None


def find_reduction(mu: ResolvedWord) -> ReductionStep:
    """Locate a reduction pattern, trying UniqueMax, then Square, then
    Triangle.  Patterns already present in the word are reported in place;
    otherwise the word is rotated and commuted until one is exposed."""
    letters = mu.letters
    if not letters:
        raise ValueError("find_reduction needs a nonempty word")
    m = len(letters)
    top = max(letters)
    occ = [p for p, x in enumerate(letters) if x == top]
    work = _Work(letters)
    if len(occ) == 1:
        work.rotate(occ[0] + 1)
        kind, idx, pos = "unique_max", top, m - 1
    else:
        found = _linear_pattern(letters)
        if found is None:
            # wrap-around patterns: rotate so the word starts at a top letter
            rot = (occ[-1] - m) % m
            work.rotate(rot)
            found = _linear_pattern(work.w)
        if found is not None:
            kind, idx, pos = found
        else:
            nxt = next(p for p in range(1, m) if work.w[p] == top)
            kind, idx, pos = _expose(work, 0, nxt, top)
    step = ReductionStep(kind, idx, pos, mu, ResolvedWord(mu.strands, tuple(work.w)), tuple(work.ops))
    _check_step(step)
    return step


def _check_step(step: ReductionStep) -> None:
    w = step.word.letters
    if replay_isotopies(step.source.letters, step.isotopies) != w:
        raise InvariantViolation("recorded isotopies do not reproduce the word")
    i, p = step.index, step.position
    pat = w[p:p + step.span]
    if step.kind == "unique_max":
        ok = pat == (i,) and all(x < i for x in step.nu)
    elif step.kind == "square":
        ok = pat == (i, i)
    else:
        ok = pat == (i, i - 1, i)
    if not ok:
        raise InvariantViolation(f"reduction pattern not exposed: {step}")


# ---------------------------------------------------------------------------
# canonical keys
# ---------------------------------------------------------------------------


def canonical_key(B: BraidWord) -> str:
    """Minimal rotation of the cyclically free-reduced word."""
    w = _cyclic_reduce(B.letters)
    best = min((w[k:] + w[:k] for k in range(len(w))), default=())
    return f"b:{B.strands}|" + ",".join(str(x) for x in best)


def _trace_normal_form(w: Sequence[int]) -> tuple:
    """Lexicographic normal form under far commutation (type I moves)."""
    rest = list(w)
    out = []
    while rest:
        best = None
        for p, x in enumerate(rest):
            if all(abs(x - y) > 1 for y in rest[:p]):
                if best is None or x < rest[best]:
                    best = p
        out.append(rest.pop(best))
    return tuple(out)


def canonical_resolved_key(mu: ResolvedWord) -> tuple:
    """Memo key for closed resolved words: min over rotations of the
    commutation normal form.  Equal keys imply isotopic closures."""
    w = mu.letters
    best = min((_trace_normal_form(w[k:] + w[:k]) for k in range(len(w))), default=())
    return (mu.strands, best)


# ---------------------------------------------------------------------------
# enumeration helpers for sweeps
# ---------------------------------------------------------------------------


def all_braid_words(b: int, max_len: int, min_len: int = 0):
    gens = [i for k in range(1, b) for i in (k, -k)]
    for n in range(min_len, max_len + 1):
        if n and not gens:
            break
        for letters in itertools.product(gens, repeat=n):
            yield BraidWord(b, letters)


def all_resolved_words(b: int, max_len: int, min_len: int = 0):
    gens = list(range(1, b))
    for n in range(min_len, max_len + 1):
        if n and not gens:
            break
        for letters in itertools.product(gens, repeat=n):
            yield ResolvedWord(b, letters)
