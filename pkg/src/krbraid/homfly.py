"""HOMFLY polynomial of braid closures and its specializations.

Normalization: ``x P(L_-) - x^{-1} P(L_+) = y P(L_0)`` and
``P(unknot) = (x - x^{-1}) / y``.  Computed in the Hecke algebra of S_b with
generators T_i satisfying ``T_i^2 = x^2 - x y T_i`` and a Markov trace with
``tr(a T_b) = tr(a)``, ``tr(a * 1) = delta tr(a)``, ``delta = P(unknot)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    GaussianRational,
    InexactDivisionError,
    LaurentPoly,
    RationalFunction,
)
from .braids import BraidWord, canonical_key

__all__ = [
    "HomflyBudgetError",
    "HomflyPoly",
    "FhatValue",
    "DEFAULT_BUDGET",
    "homfly",
    "clear_memo",
    "specialize_Fn",
    "specialize_Fhat",
    "classical_sl_bound",
    "skein_residual",
    "fhat_skein_residual",
    "unknot",
]

XY = ("x", "y")
DEFAULT_BUDGET = 10**6

HomflyPoly = LaurentPoly  # in variables ("x", "y"), half-tick keys


class HomflyBudgetError(RuntimeError):
    def __init__(self, msg, stats):
        super().__init__(msg)
        self.stats = stats


def _mono(x=0, y=0, c=1) -> LaurentPoly:
    return LaurentPoly.monomial(XY, (x, y), c)


_X, _XI, _Y = _mono(1), _mono(-1), _mono(0, 1)
_X2 = _mono(2)
_XY = _mono(1, 1)
_XI2 = _mono(-2)
_XIY = _mono(-1, 1)
DELTA = (_X - _XI) * _mono(0, -1)


def unknot() -> LaurentPoly:
    return DELTA


class _Budget:
    def __init__(self, cap):
        self.cap = cap
        self.used = 0

    def tick(self, k=1):
        self.used += k
        if self.used > self.cap:
            raise HomflyBudgetError(
                f"HOMFLY budget of {self.cap} states exceeded", {"states": self.used, "cap": self.cap}
            )


def _mul_gen(elem: dict, i: int, budget: _Budget) -> dict:
    """Right-multiply a Hecke element ``{perm: coeff}`` by T_i (0-based i)."""
    out: dict = {}

    def add(k, v):
        s = out.get(k)
        s = v if s is None else s + v
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s

    for w, c in elem.items():
        budget.tick()
        ws = list(w)
        ws[i], ws[i + 1] = ws[i + 1], ws[i]
        ws = tuple(ws)
        if w[i] < w[i + 1]:
            add(ws, c)
        else:
            add(ws, c * _X2)
            add(w, -(c * _XY))
    return out


def _mul_gen_inv(elem: dict, i: int, budget: _Budget) -> dict:
    # T^{-1} = x^{-2} T + x^{-1} y
    t = _mul_gen(elem, i, budget)
    out = {w: c * _XI2 for w, c in t.items()}
    for w, c in elem.items():
        v = out.get(w)
        nv = c * _XIY if v is None else v + c * _XIY
        if nv.is_zero():
            out.pop(w, None)
        else:
            out[w] = nv
    return out


class _TraceTable:
    def __init__(self):
        self.lock = threading.Lock()
        self.table: dict = {}

    def trace(self, w: tuple, budget: _Budget) -> LaurentPoly:
        hit = self.table.get(w)
        if hit is not None:
            return hit
        val = self._compute(w, budget)
        with self.lock:
            self.table.setdefault(w, val)
        return val

    def _compute(self, w: tuple, budget: _Budget) -> LaurentPoly:
        b = len(w)
        if b == 0:
            return LaurentPoly.const(XY, 1)
        if w[-1] == b - 1:
            return DELTA * self.trace(w[:-1], budget)
        # w = w' s_{b-1} ... s_k with w' fixing the last strand
        k = w.index(b - 1)
        wl = list(w)
        for p in range(k, b - 1):
            wl[p], wl[p + 1] = wl[p + 1], wl[p]
        wprime = tuple(wl[:-1])
        elem = {wprime: LaurentPoly.const(XY, 1)}
        for p in range(b - 3, k - 1, -1):
            elem = _mul_gen(elem, p, budget)
        total = LaurentPoly.zero(XY)
        for u, c in elem.items():
            total = total + c * self.trace(u, budget)
        return total


_TRACES = _TraceTable()
_MEMO: dict = {}
_MEMO_LOCK = threading.Lock()


def clear_memo() -> None:
    """Drop memoized polynomials and traces; budgets then count all work again."""
    with _MEMO_LOCK:
        _MEMO.clear()
    with _TRACES.lock:
        _TRACES.table.clear()


def homfly(B: BraidWord, budget: int = DEFAULT_BUDGET, memo: bool = True) -> LaurentPoly:
    """HOMFLY polynomial of the closure of ``B`` (variables x, y)."""
    key = canonical_key(B)
    if memo and key in _MEMO:
        return _MEMO[key]
    bud = _Budget(budget)
    elem = {tuple(range(B.strands)): LaurentPoly.const(XY, 1)}
    for letter in B.letters:
        i = abs(letter) - 1
        elem = _mul_gen(elem, i, bud) if letter > 0 else _mul_gen_inv(elem, i, bud)
    total = LaurentPoly.zero(XY)
    for w, c in elem.items():
        total = total + c * _TRACES.trace(w, bud)
    if memo:
        with _MEMO_LOCK:
            _MEMO.setdefault(key, total)
    return total


def skein_residual(B: BraidWord, pos: int, **kw) -> LaurentPoly:
    """``x P(L_-) - x^{-1} P(L_+) - y P(L_0)`` at crossing ``pos``."""
    lets = list(B.letters)
    i = abs(lets[pos])
    plus = BraidWord(B.strands, lets[:pos] + [i] + lets[pos + 1:])
    minus = BraidWord(B.strands, lets[:pos] + [-i] + lets[pos + 1:])
    zero = BraidWord(B.strands, lets[:pos] + lets[pos + 1:])
    return _X * homfly(minus, **kw) - _XI * homfly(plus, **kw) - _Y * homfly(zero, **kw)


# ---------------------------------------------------------------------------
# specializations
# ---------------------------------------------------------------------------


def _min_y_ticks(P: LaurentPoly) -> int:
    return min((k[1] for k in P.terms), default=0)


def specialize_Fn(P: LaurentPoly, n: int):
    """``P(t^n, t - t^{-1})``: a LaurentPoly in t if the denominators clear,
    otherwise a ``RationalFunction``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    T = ("t",)
    K = max(0, -_min_y_ticks(P)) // 2
    cleared = P * _mono(0, K)
    d = LaurentPoly.monomial(T, (1,)) - LaurentPoly.monomial(T, (-1,))
    num = cleared.substitute({"x": LaurentPoly.monomial(T, (n,)), "y": d}, T)
    den = LaurentPoly.const(T, 1)
    for _ in range(K):
        den = den * d
    try:
        return num.divide_exact(den)
    except InexactDivisionError:
        return RationalFunction(num, den)


@dataclass(frozen=True)
class FhatValue:
    """``numerator / (q - q^{-1})^power`` with numerator a Laurent polynomial
    in half-integer powers of t, q over Q(i).

    The square root is fixed as ``(-tq)^{1/2} = i t^{1/2} q^{1/2}``, so
    ``x = -i t^{1/2} q^{-1/2}``.  The power is reduced as far as exact
    division allows."""

    numerator: LaurentPoly
    power: int

    def over(self, power: int) -> LaurentPoly:
        """Numerator rescaled to the common denominator ``(q-q^{-1})^power``."""
        if power < self.power:
            raise ValueError("cannot lower the denominator power")
        out = self.numerator
        for _ in range(power - self.power):
            out = out * _QQ
        return out


TQ = ("t", "q")
_QQ = LaurentPoly.monomial(TQ, (0, 1)) - LaurentPoly.monomial(TQ, (0, -1))
_I = GaussianRational(0, 1)
_X_HAT = LaurentPoly(TQ, {(1, -1): -_I})  # -i t^{1/2} q^{-1/2}
_S_HAT = LaurentPoly(TQ, {(1, 1): _I})  # (-tq)^{1/2}


def specialize_Fhat(P: LaurentPoly) -> FhatValue:
    """F-hat from P: same skein, unknot value ``-x^{-1} y^{-1}``, then the
    change of variables ``x = -q^{-1}(-tq)^{1/2}``, ``y = q - q^{-1}``."""
    reduced = (P * _Y).divide_exact(_X - _XI)
    F = reduced * _mono(-1, -1, -1)
    K = max(0, -_min_y_ticks(F)) // 2
    num = (F * _mono(0, K)).substitute({"x": _X_HAT, "y": _QQ}, TQ)
    while K > 0:
        try:
            num = num.divide_exact(_QQ)
        except InexactDivisionError:
            break
        K -= 1
    return FhatValue(num, K)


def fhat_skein_residual(plus: FhatValue, minus: FhatValue, zero: FhatValue) -> LaurentPoly:
    """Numerator of the hatted skein residual over a common denominator."""
    K = max(plus.power, minus.power, zero.power)
    qi = LaurentPoly.monomial(TQ, (0, -1))
    q = LaurentPoly.monomial(TQ, (0, 1))
    s_inv = LaurentPoly(TQ, {(-1, -1): -_I})  # 1/(i t^{1/2} q^{1/2})
    lhs = -(qi * _S_HAT * minus.over(K)) + q * s_inv * plus.over(K)
    return lhs - _QQ * zero.over(K)


def classical_sl_bound(P: LaurentPoly) -> int:
    """Upper bound for sl from the lowest x-degree of P.

    In this normalization the Morton--Franks--Williams inequality reads
    ``sl <= min deg_x P``; it is sharp on the unknot and positive torus knots.
    """
    if P.is_zero():
        raise ValueError("zero polynomial")
    lo = min(k[0] for k in P.terms)
    if lo % 2:
        raise ValueError("x exponents of P must be integers")
    return lo // 2


def to_json(P: LaurentPoly) -> list:
    """Sorted monomial list ``[{"x": ticks, "y": ticks, "c": "p/q"}]``."""
    out = []
    for k in sorted(P.terms):
        out.append({"x": k[0], "y": k[1], "c": str(Fraction(P.terms[k]))})
    return out


def from_json(rows: list) -> LaurentPoly:
    return LaurentPoly(XY, {(r["x"], r["y"]): Fraction(r["c"]) for r in rows})
