"""Sweep harness: every property suite as a deterministic function of a
:class:`SuiteConfig`, shared by the ``verify`` subcommand and the tests."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace

from .braids import (
    BraidParseError,
    BraidWord,
    InvariantViolation,
    QuasiPositiveWitness,
    all_braid_words,
    all_resolved_words,
    free_reduce,
    verify_witness,
)
from .homfly import classical_sl_bound, homfly, specialize_Fn, to_json
from .khovanov import build_cube, euler_characteristic, g2_extremes, homology, psi2
from .koszul import RingSpec, build, chi_a1, chi_pair, graded_homology
from .algebra import MultiPoly
from .moy import a_support_H, gdim_Hn, gn_extremes

__all__ = [
    "SuiteConfig",
    "SuiteResult",
    "SUITES",
    "DEFAULTS",
    "run_suite",
    "random_word",
    "random_markov_move",
    "random_qp_witness",
]


@dataclass(frozen=True)
class SuiteConfig:
    max_strands: int = 3
    max_length: int = 3
    ns: tuple = (2,)
    seed: int = 0
    count: int = 20


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures and self.checked > 0

    def fail(self, what) -> None:
        self.failures.append(what)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "checked": self.checked,
            "pass": self.passed,
            "failures": [str(f) for f in self.failures[:50]],
            "details": self.details,
        }


def _braids(cfg: SuiteConfig, min_strands: int = 1):
    for b in range(min_strands, cfg.max_strands + 1):
        yield from all_braid_words(b, cfg.max_length)


def _resolved(cfg: SuiteConfig):
    for b in range(1, cfg.max_strands + 1):
        yield from all_resolved_words(b, cfg.max_length)


# ---------------------------------------------------------------------------
# random generators
# ---------------------------------------------------------------------------


def random_word(rng: random.Random, b: int, length: int, positive: bool = False) -> BraidWord:
    if b < 2:
        return BraidWord(b, ())
    letters = []
    for _ in range(length):
        i = rng.randint(1, b - 1)
        letters.append(i if positive or rng.random() < 0.5 else -i)
    return BraidWord(b, tuple(letters))


def random_qp_witness(rng: random.Random, b: int, max_len: int = 8) -> tuple[BraidWord, QuasiPositiveWitness]:
    """A random product of conjugates of positive generators, free-reduced,
    with at most ``max_len`` letters."""
    while True:
        factors = []
        for _ in range(rng.randint(1, 3)):
            eta = random_word(rng, b, rng.randint(0, 2)).letters
            factors.append((eta, rng.randint(1, b - 1)))
        wit = QuasiPositiveWitness(tuple(factors))
        letters = free_reduce(wit.expand())
        if len(letters) <= max_len:
            return BraidWord(b, letters), wit


def random_markov_move(rng: random.Random, B: BraidWord, max_length: int = 8, max_strands: int = 4):
    """One move preserving the closure.  Returns ``(name, new_braid)``."""
    b, w = B.strands, list(B.letters)
    moves = ["rotate", "commute", "braid_relation"]
    if len(w) + 2 <= max_length and b >= 2:
        moves += ["conjugate", "insert_pair"]
    if len(w) + 1 <= max_length and b + 1 <= max_strands:
        moves += ["stabilize_pos", "stabilize_neg"]
    if len(w) >= 2:
        moves.append("free_reduce")
    moves.append("destabilize")
    rng.shuffle(moves)
    for name in moves:
        out = _apply_move(rng, B, name)
        if out is not None:
            return name, out
    return "identity", B


def _apply_move(rng: random.Random, B: BraidWord, name: str):
    b, w = B.strands, list(B.letters)
    if name == "rotate":
        return B.rotate(rng.randint(0, max(0, len(w) - 1))) if w else None
    if name == "conjugate":
        i = rng.randint(1, b - 1)
        return B.conjugate((i if rng.random() < 0.5 else -i,))
    if name == "insert_pair":
        i = rng.randint(1, b - 1)
        p = rng.randint(0, len(w))
        s = 1 if rng.random() < 0.5 else -1
        return BraidWord(b, tuple(w[:p] + [s * i, -s * i] + w[p:]))
    if name == "stabilize_pos":
        return B.stabilize_pos()
    if name == "stabilize_neg":
        return B.stabilize_neg()
    if name == "destabilize":
        try:
            return B.destabilize()
        except BraidParseError:
            return None
    if name == "free_reduce":
        out = B.free_reduce()
        return out if out != B else None
    if name == "commute":
        spots = [p for p in range(len(w) - 1) if abs(abs(w[p]) - abs(w[p + 1])) > 1]
        if not spots:
            return None
        p = rng.choice(spots)
        w[p], w[p + 1] = w[p + 1], w[p]
        return BraidWord(b, tuple(w))
    if name == "braid_relation":
        spots = []
        for p in range(len(w) - 2):
            x, y, z = w[p : p + 3]
            if x == z and x * y > 0 and abs(abs(x) - abs(y)) == 1:
                spots.append(p)
        if not spots:
            return None
        p = rng.choice(spots)
        x, y, _ = w[p : p + 3]
        w[p : p + 3] = [y, x, y]
        return BraidWord(b, tuple(w))
    raise ValueError(name)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def suite_euler(cfg: SuiteConfig) -> SuiteResult:
    """Graded Euler characteristic of the n=2 homology against F_2 of HOMFLY."""
    res = SuiteResult("euler")
    for B in _braids(cfg):
        res.checked += 1
        chi = euler_characteristic(homology(build_cube(B)))
        if chi != specialize_Fn(homfly(B), 2):
            res.fail(B.format())
    return res


def suite_rewriter_oracle(cfg: SuiteConfig) -> SuiteResult:
    """Rewriter graded dimensions against the Koszul oracle, degree by degree."""
    res = SuiteResult("rewriter-oracle")
    for n in cfg.ns:
        R = RingSpec.Hn(n)
        for mu in _resolved(cfg):
            res.checked += 1
            table = graded_homology(build(mu, R))
            if table.warning or table.total_by_x() != gdim_Hn(mu, n):
                res.fail(f"n={n} {mu.format()}")
    return res


def suite_resolved_braids(cfg: SuiteConfig, oracle_strands: int = 3, oracle_length: int = 3) -> SuiteResult:
    """a-supports inside [-b, -1]; exact comparison with the Hax oracle on
    small words."""
    res = SuiteResult("resolved-braids")
    inexact = agree = 0
    for mu in _resolved(cfg):
        res.checked += 1
        try:
            s = a_support_H(mu)
        except InvariantViolation as exc:
            res.fail(str(exc))
            continue
        if not all(-mu.strands <= d <= -1 for d in s.degrees):
            res.fail(mu.format())
        if mu.strands <= oracle_strands and len(mu.letters) <= oracle_length:
            oracle = graded_homology(build(mu, RingSpec.Hax())).a_support()
            if not oracle <= set(range(-mu.strands, 0)):
                res.fail(f"oracle {mu.format()}: {sorted(oracle)}")
            if s.exact and oracle != set(s.degrees):
                res.fail(f"exact support mismatch {mu.format()}")
            if not s.exact:
                inexact += 1
                agree += oracle == set(s.degrees)
    res.details = {"inexact_compared": inexact, "inexact_equal_to_oracle": agree}
    return res


def suite_resolved_braids_n(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("resolved-braids-n")
    for n in cfg.ns:
        for mu in _resolved(cfg):
            res.checked += 1
            try:
                gn_extremes(mu, n)
            except InvariantViolation as exc:
                res.fail(str(exc))
    return res


def suite_chi(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("chi")
    rings = [RingSpec.Hn(n) for n in cfg.ns] + [RingSpec.Hax()]
    for R in rings:
        res.checked += 1
        try:
            if not R.is_ax:
                chi_a1(R.n)
            chi0, chi1 = chi_pair(R)
        except InvariantViolation as exc:
            res.fail(f"{R.label()}: {exc}")
            continue
        vars = chi0.source.vars
        d = MultiPoly.var(vars, "x3") - MultiPoly.var(vars, "x2")
        if not chi1.compose(chi0).is_scalar(d):
            res.fail(f"{R.label()}: chi1 chi0")
        if not chi0.compose(chi1).is_scalar(d):
            res.fail(f"{R.label()}: chi0 chi1")
        if not (chi0.homogeneous() and chi1.homogeneous()):
            res.fail(f"{R.label()}: inhomogeneous")
    return res


def suite_main2(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("main-2")
    for B in _braids(cfg):
        res.checked += 1
        b, w = B.strands, B.writhe
        lo, hi = g2_extremes(B)
        if not ((w - b) - 2 * B.c_minus <= lo <= hi <= (w + b) + 2 * B.c_plus):
            res.fail(B.format())
    return res


def _neg_only(B: BraidWord) -> bool:
    return any(-i in B.letters and i not in B.letters for i in range(1, B.strands))


def suite_psi(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("psi")
    rng = random.Random(cfg.seed)

    def status(B):
        c = psi2(B)
        if not c.is_cocycle or c.bidegree != (0, -B.sl):
            res.fail(f"bad cocycle or degree {B.format()}")
        return c.class_zero

    for B in _braids(cfg):
        if all(x > 0 for x in B.letters):
            res.checked += 1
            if status(B):
                res.fail(f"positive {B.format()} has psi=0")
        elif _neg_only(B):
            res.checked += 1
            if not status(B):
                res.fail(f"{B.format()} has psi!=0")
    for _ in range(cfg.count):
        b = rng.randint(2, max(2, cfg.max_strands))
        B, wit = random_qp_witness(rng, b)
        res.checked += 1
        if not verify_witness(B, wit):
            res.fail(f"witness rejected {B.format()}")
        if status(B):
            res.fail(f"quasi-positive {B.format()} has psi=0")
    for _ in range(cfg.count):
        b = rng.randint(1, max(1, cfg.max_strands))
        B = random_word(rng, b, rng.randint(0, 4)).stabilize_neg()
        res.checked += 1
        if not status(B):
            res.fail(f"negative stabilization {B.format()} has psi!=0")
    for _ in range(cfg.count):
        b = rng.randint(2, max(2, cfg.max_strands))
        B = random_word(rng, b, rng.randint(1, 4))
        base = status(B)
        moved = B.rotate(rng.randint(0, len(B.letters) - 1)) if rng.random() < 0.5 else B.stabilize_pos()
        i = rng.randint(1, moved.strands - 1)
        moved = moved.conjugate((i,)) if rng.random() < 0.5 else moved
        res.checked += 1
        if status(moved) != base:
            res.fail(f"transversal move changed psi: {B.format()} -> {moved.format()}")
    return res


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def suite_markov(cfg: SuiteConfig) -> SuiteResult:
    """HOMFLY and the n=2 table are byte-identical along random Markov paths."""
    res = SuiteResult("markov")
    rng = random.Random(cfg.seed)
    moves_seen: dict = {}
    for _ in range(cfg.count):
        b = rng.randint(1, max(1, cfg.max_strands))
        B = random_word(rng, b, rng.randint(0, cfg.max_length))
        P0 = _dump(to_json(homfly(B, memo=False)))
        K0 = _dump(homology(build_cube(B)).rows_json())
        C = B
        path = []
        for _ in range(rng.randint(1, 4)):
            name, C = random_markov_move(rng, C)
            path.append(name)
            moves_seen[name] = moves_seen.get(name, 0) + 1
        res.checked += 1
        P1 = _dump(to_json(homfly(C, memo=False)))
        K1 = _dump(homology(build_cube(C)).rows_json())
        if P0 != P1 or K0 != K1:
            res.fail(f"{B.format()} -> {C.format()} via {path}")
    res.details = {"moves": moves_seen}
    return res


def suite_sharpness(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("sharpness")
    rows = []
    for k in (1, 3, 5, 7):
        B = BraidWord(2, (1,) * k)
        res.checked += 1
        bound = classical_sl_bound(homfly(B))
        zero = psi2(B).class_zero
        rows.append({"k": k, "sl": B.sl, "classical": bound, "psi2_zero": zero})
        if B.sl != bound or zero:
            res.fail(f"sigma1^{k}")
    res.details = {"rows": rows}
    return res


SUITES = {
    "euler": suite_euler,
    "rewriter-oracle": suite_rewriter_oracle,
    "resolved-braids": suite_resolved_braids,
    "resolved-braids-n": suite_resolved_braids_n,
    "chi": suite_chi,
    "main-2": suite_main2,
    "psi": suite_psi,
    "markov": suite_markov,
    "sharpness": suite_sharpness,
}

# Sweep sizes used by the acceptance suite.
DEFAULTS = {
    "euler": SuiteConfig(max_strands=3, max_length=6),
    "rewriter-oracle": SuiteConfig(max_strands=3, max_length=3, ns=(2, 3)),
    "resolved-braids": SuiteConfig(max_strands=4, max_length=6),
    "resolved-braids-n": SuiteConfig(max_strands=4, max_length=6, ns=(2, 3, 4)),
    "chi": SuiteConfig(ns=(2, 3, 4)),
    "main-2": SuiteConfig(max_strands=3, max_length=5),
    "psi": SuiteConfig(max_strands=3, max_length=5, count=20),
    "markov": SuiteConfig(max_strands=3, max_length=4, count=200),
    "sharpness": SuiteConfig(),
}


def run_suite(name: str, cfg: SuiteConfig | None = None, **overrides) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    cfg = cfg if cfg is not None else DEFAULTS[name]
    if overrides:
        cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    return SUITES[name](cfg)
