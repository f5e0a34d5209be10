"""Executable checks of the a-support and quantum-degree inequalities for
braid closures, with the classical HOMFLY comparators alongside.

All windows and observed values in reports are stored in half-ticks
(twice the actual degree) so that half-integral endpoints stay integral.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .braids import BraidWord, InvariantViolation, QuasiPositiveWitness, enumerate_resolutions, verify_witness
from .homfly import classical_sl_bound, homfly
from .khovanov import build_cube, g2_extremes, homology, psi2
from .moy import a_support_H, gn_extremes

__all__ = [
    "Verdict",
    "BoundReport",
    "check_hat_inequality",
    "check_n_inequality",
    "sl_report",
    "full_report",
]


@dataclass
class Verdict:
    name: str
    window: tuple  # half-ticks
    observed: list
    passed: bool
    note: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "window": list(self.window), "observed": self.observed, "pass": self.passed}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class BoundReport:
    braid: BraidWord
    verdicts: list = field(default_factory=list)
    raw: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def stats(self) -> dict:
        B = self.braid
        return {"b": B.strands, "m": len(B.letters), "w": B.writhe, "c_plus": B.c_plus, "c_minus": B.c_minus, "sl": B.sl}

    def merge(self, other: "BoundReport") -> "BoundReport":
        self.verdicts.extend(other.verdicts)
        self.raw.update(other.raw)
        self.flags.update(other.flags)
        return self

    def to_json(self) -> dict:
        return {
            "braid": self.braid.format(),
            "stats": self.stats(),
            "inequalities": [v.to_json() for v in self.verdicts],
            "flags": self.flags,
            "pass": self.passed,
        }


def _bits(r) -> str:
    return "".join(map(str, r.bits))


def check_hat_inequality(B: BraidWord) -> BoundReport:
    """Every resolution's a-support lies in [-b, -1]; this is what confines
    the a-degrees of the closure to ``[(w-b)/2, (w+b)/2 - 1]``."""
    b, w = B.strands, B.writhe
    rep = BoundReport(B)
    observed = []
    ok = True
    for r in enumerate_resolutions(B):
        try:
            s = a_support_H(r.word)
            inside = all(-b <= d <= -1 for d in s.degrees)
            observed.append({"resolution": _bits(r), "support": [2 * d for d in sorted(s.degrees)], "exact": s.exact})
        except InvariantViolation as exc:
            inside = False
            observed.append({"resolution": _bits(r), "error": str(exc)})
        ok = ok and inside
    rep.verdicts.append(Verdict("resolved-a-support", (-2 * b, -2), observed, ok))
    rep.verdicts.append(
        Verdict(
            "hat-window",
            (w - b, w + b - 2),
            [],
            ok and w - b <= w + b - 2,
            "finite-n proxy: implied by the resolution-level supports",
        )
    )
    return rep


def check_n_inequality(B: BraidWord, n: int) -> BoundReport:
    if n < 2:
        raise ValueError("n must be >= 2")
    b, w = B.strands, B.writhe
    lo_w = (n - 1) * (w - b) - 2 * B.c_minus
    hi_w = (n - 1) * (w + b) + 2 * B.c_plus
    rep = BoundReport(B)
    res_obs, pot_obs = [], []
    res_ok = pot_ok = True
    hull = None
    for r in enumerate_resolutions(B, n):
        mu = r.word
        p = r.shift(n)
        bound = (n - 1) * b + len(mu.letters)
        try:
            lo, hi = gn_extremes(mu, n)
        except InvariantViolation as exc:
            res_ok = False
            res_obs.append({"resolution": _bits(r), "error": str(exc)})
            continue
        res_obs.append({"resolution": _bits(r), "extremes": [2 * lo, 2 * hi], "bound": 2 * bound})
        pot = (p - bound, p + bound)
        pot_obs.append({"resolution": _bits(r), "shift": 2 * p, "potential": [2 * pot[0], 2 * pot[1]]})
        pot_ok = pot_ok and lo_w <= pot[0] and pot[1] <= hi_w
        cur = (lo + p, hi + p)
        hull = cur if hull is None else (min(hull[0], cur[0]), max(hull[1], cur[1]))
    rep.verdicts.append(Verdict(f"resolved-gn-extremes(n={n})", (None, None), res_obs, res_ok, "window is +-((n-1)b+m) per resolution"))
    rep.verdicts.append(Verdict(f"main-n-window(n={n})", (2 * lo_w, 2 * hi_w), pot_obs, pot_ok, "resolution level"))
    rep.raw[f"hull(n={n})"] = None if hull is None else [2 * hull[0], 2 * hull[1]]
    if n == 2:
        table = homology(build_cube(B))
        glo, ghi = g2_extremes(B, table)
        rep.raw["g2"] = [2 * glo, 2 * ghi]
        rep.verdicts.append(Verdict("main-2-link", (2 * lo_w, 2 * hi_w), [2 * glo, 2 * ghi], lo_w <= glo <= ghi <= hi_w))
        sub_ok = hull is not None and hull[0] <= glo and ghi <= hull[1]
        rep.verdicts.append(
            Verdict(
                "resolution-hull-contains-link",
                tuple(2 * x for x in hull) if hull else (None, None),
                [2 * glo, 2 * ghi],
                sub_ok,
            )
        )
    return rep


def sl_report(B: BraidWord, witness: QuasiPositiveWitness | None = None) -> BoundReport:
    """Self-linking number against the classical and the n=2 upper bounds.

    The n=2 quantity comes from the upper inequality applied to the mirror:
    ``g_max(mirror) <= (w(mirror) + b) + 2 c_+(mirror)`` rearranges to
    ``sl <= 2 c_+(mirror) - g_max(mirror)``.
    """
    rep = BoundReport(B)
    sl = B.sl
    P = homfly(B)
    classical = classical_sl_bound(P)
    M = B.mirror()
    _, gmax_m = g2_extremes(M)
    proxy = 2 * M.c_plus - gmax_m
    xs = [k[0] for k in P.terms]
    # P carries the unknot factor (x - x^{-1})/y, which adds 2 to the x-span
    braid_index = (max(xs) - min(xs)) // 4
    rep.raw.update(
        {"sl": 2 * sl, "classical": 2 * classical, "mirror_g2_max": 2 * gmax_m, "n2_proxy": 2 * proxy, "braid_index_lower": 2 * braid_index}
    )
    rep.verdicts.append(Verdict("sl-classical", (None, 2 * classical), [2 * sl], sl <= classical))
    rep.verdicts.append(Verdict("sl-n2-mirror", (None, 2 * proxy), [2 * sl], sl <= proxy, "finite-n proxy"))
    rep.verdicts.append(
        Verdict(
            "braid-index-classical",
            (2 * braid_index, None),
            [2 * B.strands],
            B.strands >= braid_index,
            "classical comparator from the x-span of P",
        )
    )
    cert = psi2(B)
    rep.raw["psi2_zero"] = cert.class_zero
    rep.raw["psi2_degree"] = list(cert.bidegree)
    certified = bool(witness is not None and not cert.class_zero and verify_witness(B, witness))
    rep.flags["maximal_sl_n2_evidence"] = certified
    return rep


def full_report(B: BraidWord, n: int = 2, witness: QuasiPositiveWitness | None = None) -> BoundReport:
    rep = check_hat_inequality(B)
    rep.merge(check_n_inequality(B, n))
    if n != 2:
        rep.merge(check_n_inequality(B, 2))
    rep.merge(sl_report(B, witness))
    return rep
