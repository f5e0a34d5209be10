"""Graded dimensions of H_n and a-supports of H for closed resolved braids,
by weight-decreasing rewriting.

Rules for gdim (q-graded, [k] = q^{1-k} + q^{3-k} + ... + q^{k-1}):

* no letters on b strands:        [n]^b
* a strand no letter touches:     [n] * (word with that strand deleted)
* unique top letter tau_{b-1}:    [n-1] * (remaining word on b-1 strands)
* nu tau_i tau_i:                 [2] * (nu tau_i)
* nu tau_i tau_{i-1} tau_i:       (nu tau_{i-1} tau_i tau_{i-1}) + (nu tau_i) - (nu tau_{i-1})

a-supports use the same traversal: the empty word on b strands gives
{-b, ..., -1}; unique max and square keep the support of the smaller word;
a triangle reports the union of the two positive terms and loses exactness.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .algebra import LaurentPoly
from .braids import InvariantViolation, ResolvedWord, canonical_resolved_key, find_reduction

__all__ = ["GradedDimension", "ASupport", "quantum_int", "gdim_Hn", "gn_extremes", "a_support_H", "clear_memo"]

Q = ("q",)
GradedDimension = LaurentPoly  # in q, half-tick keys


def quantum_int(k: int) -> LaurentPoly:
    return LaurentPoly(Q, {(2 * e,): 1 for e in range(1 - k, k, 2)})


@dataclass(frozen=True)
class ASupport:
    degrees: frozenset
    exact: bool

    @property
    def g_max(self) -> int:
        return max(self.degrees)

    @property
    def g_min(self) -> int:
        return min(self.degrees)


_LOCK = threading.Lock()
_GDIM: dict = {}
_SUPP: dict = {}


def clear_memo() -> None:
    with _LOCK:
        _GDIM.clear()
        _SUPP.clear()


def _drop_free_strand(mu: ResolvedWord):
    """Return (word without one free strand) or None."""
    used = set()
    for i in mu.letters:
        used.add(i)
        used.add(i + 1)
    for p in range(1, mu.strands + 1):
        if p not in used:
            letters = tuple(i - 1 if i > p else i for i in mu.letters)
            return ResolvedWord(mu.strands - 1, letters)
    return None


def _measure(mu: ResolvedWord):
    return (mu.strands, mu.weight)


def _check_child(parent: ResolvedWord, child: ResolvedWord) -> ResolvedWord:
    if _measure(child) >= _measure(parent):
        raise InvariantViolation(f"rewriting measure did not decrease: {parent} -> {child}")
    return child


def gdim_Hn(mu: ResolvedWord, n: int) -> LaurentPoly:
    """Graded dimension of H_n of the closure of ``mu``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return _gdim(mu, n)


def _gdim(mu: ResolvedWord, n: int) -> LaurentPoly:
    key = (n, canonical_resolved_key(mu))
    hit = _GDIM.get(key)
    if hit is not None:
        return hit
    val = _gdim_compute(mu, n)
    if any(c < 0 for c in val.terms.values()):
        raise InvariantViolation(f"negative graded dimension for {mu}: {val}")
    with _LOCK:
        _GDIM.setdefault(key, val)
    return val


def _gdim_compute(mu: ResolvedWord, n: int) -> LaurentPoly:
    if not mu.letters:
        out = LaurentPoly.const(Q, 1)
        for _ in range(mu.strands):
            out = out * quantum_int(n)
        return out
    smaller = _drop_free_strand(mu)
    if smaller is not None:
        return quantum_int(n) * _gdim(_check_child(mu, smaller), n)
    step = find_reduction(mu)
    nu, i, b = step.nu, step.index, mu.strands
    if step.kind == "unique_max":
        if i != b - 1:  # pragma: no cover - free strands are removed first
            raise InvariantViolation("unique max below the top strand")
        return quantum_int(n - 1) * _gdim(_check_child(mu, ResolvedWord(b - 1, nu)), n)
    if step.kind == "square":
        return quantum_int(2) * _gdim(_check_child(mu, ResolvedWord(b, nu + (i,))), n)
    mu1 = _check_child(mu, ResolvedWord(b, nu + (i - 1, i, i - 1)))
    mu2 = _check_child(mu, ResolvedWord(b, nu + (i,)))
    mu4 = _check_child(mu, ResolvedWord(b, nu + (i - 1,)))
    return _gdim(mu1, n) + _gdim(mu2, n) - _gdim(mu4, n)


def gn_extremes(mu: ResolvedWord, n: int) -> tuple[int, int]:
    """Lowest and highest q-degree of H_n, checked against +-((n-1)b + m)."""
    g = gdim_Hn(mu, n)
    lo, hi = g.tick_range("q")
    lo, hi = lo // 2, hi // 2
    bound = (n - 1) * mu.strands + len(mu.letters)
    if not (-bound <= lo <= hi <= bound):
        raise InvariantViolation(f"q-extremes {(lo, hi)} outside +-{bound} for {mu}")
    return lo, hi


def a_support_H(mu: ResolvedWord) -> ASupport:
    # keyed by the literal word: the exactness flag records the derivation of
    # this word, and a class-wide key would make it depend on call order
    key = (mu.strands, mu.letters)
    hit = _SUPP.get(key)
    if hit is not None:
        return hit
    val = _support_compute(mu)
    if not all(-mu.strands <= d <= -1 for d in val.degrees):
        raise InvariantViolation(f"a-support {sorted(val.degrees)} outside [-b,-1] for {mu}")
    with _LOCK:
        _SUPP.setdefault(key, val)
    return val


def _support_compute(mu: ResolvedWord) -> ASupport:
    b = mu.strands
    if not mu.letters:
        return ASupport(frozenset(range(-b, 0)), True)
    step = find_reduction(mu)
    nu, i = step.nu, step.index
    if step.kind == "unique_max":
        return a_support_H(_check_child(mu, ResolvedWord(b, nu)))
    if step.kind == "square":
        return a_support_H(_check_child(mu, ResolvedWord(b, nu + (i,))))
    s1 = a_support_H(_check_child(mu, ResolvedWord(b, nu + (i - 1, i, i - 1))))
    s2 = a_support_H(_check_child(mu, ResolvedWord(b, nu + (i,))))
    return ASupport(s1.degrees | s2.degrees, False)
