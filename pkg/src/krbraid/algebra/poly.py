"""Exact multivariate polynomials and Laurent polynomials.

``MultiPoly`` lives in an ordinary polynomial ring over the rationals with a
fixed, named variable tuple.  ``LaurentPoly`` allows negative and half-integer
exponents; exponents are stored in *half-ticks* (the integer ``2*e``), so a
grading of ``1/2`` is the key ``1``.  Coefficients of a ``LaurentPoly`` can be
any exact ring element supporting ``+ - *`` (``Fraction`` or ``GaussianRational``).

All values are immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "AlgebraError",
    "InexactDivisionError",
    "VariableMismatchError",
    "GaussianRational",
    "MultiPoly",
    "LaurentPoly",
    "RationalFunction",
    "as_fraction",
]


class AlgebraError(ArithmeticError):
    pass


class InexactDivisionError(AlgebraError):
    """Raised when ``divide_exact`` leaves a nonzero remainder."""


class VariableMismatchError(AlgebraError):
    pass


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot coerce {c!r} to an exact rational")


class GaussianRational:
    """Element ``re + im*i`` of Q[i]/(i^2+1)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _lift(other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return other
        return GaussianRational(other, 0)

    def __add__(self, other):
        o = self._lift(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        return f"({self.re}+{self.im}*i)"


I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# MultiPoly
# ---------------------------------------------------------------------------


def _clean(terms: Mapping) -> dict:
    return {k: v for k, v in terms.items() if v}


class MultiPoly:
    """Polynomial over Q in the named variables ``vars``.

    ``terms`` maps exponent tuples (one nonnegative int per variable) to
    nonzero ``Fraction`` coefficients.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping | None = None):
        vs = tuple(vars)
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != len(vs) or any(e < 0 for e in mono):
                raise VariableMismatchError(f"bad monomial {mono} for variables {vs}")
            c = as_fraction(c)
            if c:
                clean[mono] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, vars) -> "MultiPoly":
        return cls(vars)

    @classmethod
    def const(cls, vars, c) -> "MultiPoly":
        vs = tuple(vars)
        return cls(vs, {(0,) * len(vs): c})

    @classmethod
    def var(cls, vars, name: str) -> "MultiPoly":
        vs = tuple(vars)
        if name not in vs:
            raise VariableMismatchError(f"{name} not in {vs}")
        mono = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, {mono: 1})

    @classmethod
    def _raw(cls, vars: tuple, terms: dict) -> "MultiPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "vars", vars)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise VariableMismatchError(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for m, c in o.terms.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return MultiPoly._raw(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, 0) + c1 * c2
        return MultiPoly._raw(self.vars, _clean(t))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise AlgebraError("negative power of a polynomial")
        out = MultiPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # structure -------------------------------------------------------------
    def variables_used(self) -> set[str]:
        used = set()
        for m in self.terms:
            for v, e in zip(self.vars, m):
                if e:
                    used.add(v)
        return used

    def degree_in(self, name: str) -> int:
        k = self.vars.index(name)
        return max((m[k] for m in self.terms), default=-1)

    def weighted_degrees(self, weights: Mapping[str, tuple], width: int = 2) -> set[tuple]:
        """Set of weighted degrees of the monomials (weights are int tuples).

        ``width`` is only consulted when ``weights`` is empty."""
        w = [weights[v] for v in self.vars]
        if weights:
            width = len(next(iter(weights.values())))
        out = set()
        for m in self.terms:
            d = [0] * width
            for e, wv in zip(m, w):
                if e:
                    for i in range(width):
                        d[i] += e * wv[i]
            out.add(tuple(d))
        return out

    def homogeneous_degree(self, weights: Mapping[str, tuple]):
        """Weighted degree if homogeneous, ``None`` if zero, else raise."""
        degs = self.weighted_degrees(weights)
        if not degs:
            return None
        if len(degs) > 1:
            raise AlgebraError(f"inhomogeneous polynomial {self}")
        return next(iter(degs))

    def with_vars(self, vars: Iterable[str]) -> "MultiPoly":
        """Re-embed into a ring with a different variable tuple."""
        vs = tuple(vars)
        idx = []
        for v in self.vars:
            idx.append(vs.index(v) if v in vs else None)
        t = {}
        for m, c in self.terms.items():
            nm = [0] * len(vs)
            for e, j in zip(m, idx):
                if e:
                    if j is None:
                        raise VariableMismatchError(f"variable dropped while in use")
                    nm[j] = e
            t[tuple(nm)] = c
        return MultiPoly._raw(vs, t)

    def substitute(self, mapping: Mapping[str, "MultiPoly | int | Fraction"]) -> "MultiPoly":
        """Replace variables by polynomials over the same variable tuple."""
        subs = {}
        for name, val in mapping.items():
            if name not in self.vars:
                raise VariableMismatchError(f"{name} not in {self.vars}")
            subs[self.vars.index(name)] = self._coerce(val)
        if not subs:
            return self
        powcache: dict = {}
        out = MultiPoly.zero(self.vars)
        for m, c in self.terms.items():
            keep = tuple(0 if i in subs else e for i, e in enumerate(m))
            term = MultiPoly._raw(self.vars, {keep: c})
            for i, e in enumerate(m):
                if e and i in subs:
                    key = (i, e)
                    if key not in powcache:
                        powcache[key] = subs[i] ** e
                    term = term * powcache[key]
            out = out + term
        return out

    def _leading(self, order):
        return max(self.terms, key=order)

    def divide_exact(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact quotient ``self / divisor``; raises ``InexactDivisionError``."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        order = lambda m: m  # noqa: E731  (lex)
        lm_d = max(divisor.terms, key=order)
        lc_d = divisor.terms[lm_d]
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            lm = max(rem, key=order)
            shift = tuple(a - b for a, b in zip(lm, lm_d))
            if any(e < 0 for e in shift):
                raise InexactDivisionError(f"{self} is not divisible by {divisor}")
            q = rem[lm] / lc_d
            quot[shift] = quot.get(shift, 0) + q
            for m, c in divisor.terms.items():
                mm = tuple(a + b for a, b in zip(m, shift))
                v = rem.get(mm, 0) - q * c
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return MultiPoly._raw(self.vars, _clean(quot))

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        vals = [as_fraction(point[v]) for v in self.vars]
        for m, c in self.terms.items():
            t = c
            for e, x in zip(m, vals):
                if e:
                    t *= x ** e
            total += t
        return total

    # printing -----------------------------------------------------------------
    def sorted_terms(self) -> list:
        """Terms in degrevlex order, highest first."""
        def key(m):
            return (sum(m), tuple(-e for e in reversed(m)))
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, m) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self})"


# ---------------------------------------------------------------------------
# LaurentPoly
# ---------------------------------------------------------------------------


def _ticks(e) -> int:
    """Exponent -> half-ticks.  Accepts int or Fraction with denominator 1 or 2."""
    f = as_fraction(e)
    t = f * 2
    if t.denominator != 1:
        raise AlgebraError(f"exponent {e} is not a half-integer")
    return int(t)


class LaurentPoly:
    """Laurent polynomial in named variables with half-tick exponent keys."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping | None = None):
        vs = tuple(vars)
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(int(k) for k in key)
            if len(key) != len(vs):
                raise VariableMismatchError(f"bad key {key} for {vs}")
            if isinstance(c, int):
                c = Fraction(c)
            if c:
                clean[key] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def _raw(cls, vars, terms):
        p = object.__new__(cls)
        object.__setattr__(p, "vars", vars)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    @classmethod
    def zero(cls, vars) -> "LaurentPoly":
        return cls(vars)

    @classmethod
    def const(cls, vars, c) -> "LaurentPoly":
        vs = tuple(vars)
        return cls(vs, {(0,) * len(vs): c})

    @classmethod
    def monomial(cls, vars, exps, c=1) -> "LaurentPoly":
        """Monomial with *actual* exponents (ints or half-integers)."""
        vs = tuple(vars)
        if isinstance(exps, Mapping):
            key = tuple(_ticks(exps.get(v, 0)) for v in vs)
        else:
            key = tuple(_ticks(e) for e in exps)
        return cls(vs, {key: c})

    @classmethod
    def from_exponents(cls, vars, mapping: Mapping) -> "LaurentPoly":
        """Build from ``{exponent tuple (actual): coeff}``."""
        vs = tuple(vars)
        t = {}
        for exps, c in mapping.items():
            if not isinstance(exps, tuple):
                exps = (exps,)
            k = tuple(_ticks(e) for e in exps)
            t[k] = t.get(k, 0) + c
        return cls(vs, t)

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise VariableMismatchError(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return LaurentPoly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for k, c in o.terms.items():
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return LaurentPoly._raw(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.vars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                t[k] = t.get(k, 0) + c1 * c2
        return LaurentPoly._raw(self.vars, _clean(t))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise AlgebraError("negative power of a non-monomial")
            (key, c), = self.terms.items()
            inv = c if c in (1, -1) else _div_coeff(Fraction(1), c)
            base = LaurentPoly._raw(self.vars, {tuple(-e for e in key): inv})
            return base ** (-k)
        out = LaurentPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "LaurentPoly":
        return LaurentPoly._raw(self.vars, _clean({k: v * c for k, v in self.terms.items()}))

    def shift(self, ticks: tuple) -> "LaurentPoly":
        """Multiply by the monomial with the given half-tick exponents."""
        return LaurentPoly._raw(
            self.vars, {tuple(a + b for a, b in zip(k, ticks)): c for k, c in self.terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = LaurentPoly.const(self.vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # accessors ---------------------------------------------------------------
    def coefficient(self, exps) -> Fraction:
        if not isinstance(exps, tuple):
            exps = (exps,)
        return self.terms.get(tuple(_ticks(e) for e in exps), Fraction(0))

    def tick_range(self, var: str) -> tuple[int, int]:
        """(min, max) half-tick exponent of ``var``; raises on zero."""
        if not self.terms:
            raise AlgebraError("degree of the zero Laurent polynomial")
        i = self.vars.index(var)
        ks = [k[i] for k in self.terms]
        return min(ks), max(ks)

    def degree_range(self, var: str) -> tuple[Fraction, Fraction]:
        lo, hi = self.tick_range(var)
        return Fraction(lo, 2), Fraction(hi, 2)

    def items_exponents(self):
        """Iterate ``(actual exponent tuple, coeff)`` sorted by exponent."""
        for k in sorted(self.terms):
            yield tuple(Fraction(e, 2) for e in k), self.terms[k]

    def substitute(self, mapping: Mapping[str, "LaurentPoly"], target_vars) -> "LaurentPoly":
        """Substitute every variable by a Laurent polynomial in ``target_vars``.

        Half-integer exponents may only be substituted by monomials whose
        half-tick exponents are all even (so the square root is a monomial).
        """
        tv = tuple(target_vars)
        subs = []
        for v in self.vars:
            val = mapping[v]
            if isinstance(val, (int, Fraction, GaussianRational)):
                val = LaurentPoly.const(tv, val)
            if val.vars != tv:
                raise VariableMismatchError(f"substitution for {v} not in {tv}")
            subs.append(val)
        out = LaurentPoly.zero(tv)
        cache: dict = {}
        for key, c in self.terms.items():
            term = LaurentPoly.const(tv, c)
            for i, t in enumerate(key):
                if not t:
                    continue
                ck = (i, t)
                if ck not in cache:
                    cache[ck] = _laurent_power_ticks(subs[i], t)
                term = term * cache[ck]
            out = out + term
        return out

    def evaluate_at_one(self):
        total = Fraction(0)
        for c in self.terms.values():
            total = total + c
        return total

    def is_palindromic(self, var: str) -> bool:
        i = self.vars.index(var)
        mirrored = {
            tuple(-e if j == i else e for j, e in enumerate(k)): c for k, c in self.terms.items()
        }
        return mirrored == self.terms

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in the Laurent ring; raises ``InexactDivisionError``."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return self
        rem = dict(self.terms)
        lm_d = max(divisor.terms)
        lc_d = divisor.terms[lm_d]
        nv = len(self.vars)
        # per-variable exponent box of any exact quotient; keeps the loop finite
        lo = [min(k[i] for k in rem) - min(k[i] for k in divisor.terms) for i in range(nv)]
        hi = [max(k[i] for k in rem) - max(k[i] for k in divisor.terms) for i in range(nv)]
        quot: dict = {}
        while rem:
            lm = max(rem)
            shift = tuple(a - b for a, b in zip(lm, lm_d))
            if any(not (lo[i] <= shift[i] <= hi[i]) for i in range(nv)):
                raise InexactDivisionError(f"{self} not divisible by {divisor}")
            q = _div_coeff(rem[lm], lc_d)
            quot[shift] = quot.get(shift, 0) + q
            for k, c in divisor.terms.items():
                kk = tuple(a + b for a, b in zip(k, shift))
                v = rem.get(kk, 0) - q * c
                if v:
                    rem[kk] = v
                else:
                    rem.pop(kk, None)
        return LaurentPoly._raw(self.vars, _clean(quot))

    # printing ----------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            mono = []
            for v, t in zip(self.vars, k):
                if t == 0:
                    continue
                e = Fraction(t, 2)
                mono.append(v if e == 1 else f"{v}^{e}" if e.denominator == 1 else f"{v}^({e})")
            m = "*".join(mono)
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(m)
            elif c == -1:
                parts.append("-" + m)
            else:
                parts.append(f"{c}*{m}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self})"


def _div_coeff(a, b):
    if isinstance(b, GaussianRational):
        if b.im == 0:
            b = b.re
        else:
            norm = b.re * b.re + b.im * b.im
            conj = GaussianRational(b.re / norm, -b.im / norm)
            return GaussianRational._lift(a) * conj
    if isinstance(a, GaussianRational):
        return GaussianRational(a.re / b, a.im / b)
    return Fraction(a) / b


def _laurent_power_ticks(p: LaurentPoly, ticks: int) -> LaurentPoly:
    if ticks % 2 == 0:
        return p ** (ticks // 2)
    if len(p.terms) != 1:
        raise AlgebraError("half-integer power of a non-monomial")
    (key, c), = p.terms.items()
    if any(k % 2 for k in key) or c != 1:
        raise AlgebraError("half-integer power needs an even-tick unit monomial")
    root = LaurentPoly._raw(p.vars, {tuple(k // 2 for k in key): Fraction(1)})
    return root ** ticks


# ---------------------------------------------------------------------------
# RationalFunction (univariate)
# ---------------------------------------------------------------------------


def _upoly(p: LaurentPoly) -> tuple[int, list]:
    """Laurent poly in one variable -> (low tick, dense coeff list in steps of 2 ticks)."""
    if p.is_zero():
        return 0, []
    lo, hi = p.tick_range(p.vars[0])
    if any((k[0] - lo) % 2 for k in p.terms):
        raise AlgebraError("mixed parity exponents in a rational function")
    coeffs = [Fraction(0)] * ((hi - lo) // 2 + 1)
    for (k,), c in p.terms.items():
        coeffs[(k - lo) // 2] = c
    return lo, coeffs


def _from_dense(var, lo, coeffs) -> LaurentPoly:
    return LaurentPoly((var,), {(lo + 2 * i,): c for i, c in enumerate(coeffs) if c})


def _dense_divmod(a: list, b: list):
    a = list(a)
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        f = a[i + len(b) - 1] / lead
        q[i] = f
        if f:
            for j, c in enumerate(b):
                a[i + j] -= f * c
    r = a[: len(b) - 1]
    while r and r[-1] == 0:
        r.pop()
    return q, r


def _dense_gcd(a: list, b: list) -> list:
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    if not a:
        return [Fraction(1)]
    return [c / a[-1] for c in a]


class RationalFunction:
    """Quotient of univariate Laurent polynomials, kept in canonical form.

    Canonical form: the denominator is a polynomial with nonzero constant term
    and leading coefficient 1; numerator and denominator are coprime.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if len(num.vars) != 1:
            raise AlgebraError("RationalFunction supports a single variable")
        var = num.vars[0]
        if den is None:
            den = LaurentPoly.const((var,), 1)
        if den.vars != num.vars:
            raise VariableMismatchError("numerator/denominator variables differ")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            object.__setattr__(self, "num", num)
            object.__setattr__(self, "den", LaurentPoly.const((var,), 1))
            return
        nlo, nc = _upoly(num)
        dlo, dc = _upoly(den)
        g = _dense_gcd(nc, dc)
        nq, nr = _dense_divmod(nc, g)
        dq, dr = _dense_divmod(dc, g)
        assert not nr and not dr
        lead = dq[-1]
        nq = [c / lead for c in nq]
        dq = [c / lead for c in dq]
        object.__setattr__(self, "num", _from_dense(var, nlo - dlo, nq))
        object.__setattr__(self, "den", _from_dense(var, 0, dq))

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def var(self) -> str:
        return self.num.vars[0]

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(LaurentPoly.const((self.var,), other))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_laurent(self) -> bool:
        return self.den == LaurentPoly.const((self.var,), 1)

    def canonical(self) -> "RationalFunction":
        return RationalFunction(self.num, self.den)

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"
