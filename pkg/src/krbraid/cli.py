"""Command-line front end: ``krbraid <command> [options]``.

Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .braids import (
    BraidParseError,
    canonical_key,
    canonical_resolved_key,
    parse_braid,
    parse_resolved,
)
from .cache import CacheConfig, ResultCache, canonical_dumps
from .homfly import DEFAULT_BUDGET, HomflyBudgetError, homfly, specialize_Fn, to_json

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "plain"), default="json")
    p.add_argument("--n", type=int, default=None, help="rank n of the sl(n) theory")
    p.add_argument("--cache-dir", default=None, help="result cache directory (default: $KRW_CACHE_DIR)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="krbraid", description="Exact link-homology computations for braid closures.")
    sub = parser.add_subparsers(dest="command", required=True)

    def braid_cmd(name, help):
        p = sub.add_parser(name, parents=[common], help=help)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--braid", help='braid word, e.g. "b=3; w= s1 -s2"')
        src.add_argument("--file", help="file with one braid per line")
        return p

    def word_cmd(name, help):
        p = sub.add_parser(name, parents=[common], help=help)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--word", help='resolved word, e.g. "b=3; w= t2 t1 t2"')
        src.add_argument("--file", help="file with one resolved word per line")
        return p

    p = braid_cmd("homfly", "HOMFLY polynomial (and F_n with --n)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    braid_cmd("khovanov", "bigraded n=2 homology table")
    braid_cmd("psi", "transversal class psi_2 with certificate")
    braid_cmd("bounds", "inequality report")
    word_cmd("moy", "graded dimension of H_n of a resolved closure")
    p = word_cmd("support", "a-support of H of a resolved closure")
    p.add_argument("--oracle", action="store_true", help="also compute it from the Koszul factorization")
    p = sub.add_parser("chi-check", parents=[common], help="verify the chi-map identities")
    p.add_argument("--ax", action="store_true", help="check only the ax theory")
    p = sub.add_parser("verify", parents=[common], help="run a property sweep")
    p.add_argument("--suite", required=True, help="suite name or 'all'")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-strands", type=int, default=None)
    p.add_argument("--max-length", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    return parser


def _read_inputs(args, parse):
    if getattr(args, "file", None):
        try:
            text = Path(args.file).read_text(encoding="utf-8")
        except OSError as exc:
            raise BraidParseError(f"cannot read {args.file}: {exc}") from exc
        lines = [ln.strip() for ln in text.splitlines()]
        return [parse(ln) for ln in lines if ln and not ln.startswith("#")]
    raw = args.braid if hasattr(args, "braid") else args.word
    return [parse(raw)]


def _n(args, default=2):
    n = args.n if args.n is not None else default
    if n < 2:
        raise BraidParseError("--n must be at least 2")
    return n


# ---------------------------------------------------------------------------
# commands; each returns (result, ok)
# ---------------------------------------------------------------------------


def _cmd_homfly(B, args, cache):
    params = {"n": args.n}

    def compute():
        P = homfly(B, budget=args.budget)
        out = {"P": to_json(P)}
        if args.n is not None:
            out["F_n"] = str(specialize_Fn(P, _n(args)))
        return out

    return cache.get_or_compute(canonical_key(B), "homfly", params, compute)[0], True


def _cmd_khovanov(B, args, cache):
    from .khovanov import build_cube, g2_extremes, homology

    def compute():
        t = homology(build_cube(B))
        return {"rows": t.rows_json(), "g2": list(g2_extremes(B, t))}

    return cache.get_or_compute(canonical_key(B), "khovanov", {}, compute)[0], True


def _cmd_psi(B, args, cache):
    from .khovanov import psi2

    res = cache.get_or_compute("w:" + B.format(), "psi", {}, lambda: psi2(B).to_json())[0]
    return res, res["is_cocycle"]


def _cmd_bounds(B, args, cache):
    from .bounds import full_report

    n = _n(args)
    res = cache.get_or_compute("w:" + B.format(), "bounds", {"n": n}, lambda: full_report(B, n).to_json())[0]
    return res, res["pass"]


def _cmd_moy(mu, args, cache):
    from .moy import gdim_Hn, gn_extremes

    n = _n(args)

    def compute():
        g = gdim_Hn(mu, n)
        rows = [{"q": k[0] // 2, "dim": int(c)} for k, c in sorted(g.terms.items())]
        return {"n": n, "gdim": rows, "extremes": list(gn_extremes(mu, n))}

    key = canonical_dumps(list(canonical_resolved_key(mu)))
    res = cache.get_or_compute(key, "moy", {"n": n}, compute)[0]
    return res, True


def _cmd_support(mu, args, cache):
    from .koszul import RingSpec, build, graded_homology
    from .moy import a_support_H

    def compute():
        s = a_support_H(mu)
        out = {"word": mu.format(), "support": sorted(s.degrees), "exact": s.exact}
        if args.oracle:
            out["oracle"] = sorted(graded_homology(build(mu, RingSpec.Hax())).a_support())
        return out

    # exactness is a property of the word's own derivation, so no class key
    key = f"w:{mu.format()}"
    res = cache.get_or_compute(key, "support", {"oracle": bool(args.oracle)}, compute)[0]
    ok = all(-mu.strands <= d <= -1 for d in res["support"] + res.get("oracle", []))
    return res, ok


def _cmd_chi(args):
    from .verify import SuiteConfig, suite_chi

    ns = () if args.ax else ((args.n,) if args.n is not None else (2, 3, 4))
    res = suite_chi(SuiteConfig(ns=ns)).to_json()
    return res, res["pass"]


def _cmd_verify(args):
    from .verify import DEFAULTS, SUITES, run_suite

    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise BraidParseError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))} or all")
    out = []
    for name in names:
        r = run_suite(
            name,
            DEFAULTS[name],
            seed=args.seed,
            max_strands=args.max_strands,
            max_length=args.max_length,
            count=args.count,
            ns=(args.n,) if args.n is not None else None,
        )
        out.append(r.to_json())
    return out, all(r["pass"] for r in out)


def _render(obj, fmt: str) -> str:
    if fmt == "json":
        return canonical_dumps(obj)
    if isinstance(obj, list):
        return "\n".join(_render(o, fmt) for o in obj)
    if isinstance(obj, dict) and "gdim" in obj:
        return "\n".join(f"q^{r['q']}: {r['dim']}" for r in obj["gdim"])
    if isinstance(obj, dict):
        return "\n".join(f"{k}: {canonical_dumps(v) if isinstance(v, (dict, list)) else v}" for k, v in obj.items())
    return str(obj)


_BRAID_CMDS = {"homfly": _cmd_homfly, "khovanov": _cmd_khovanov, "psi": _cmd_psi, "bounds": _cmd_bounds}
_WORD_CMDS = {"moy": _cmd_moy, "support": _cmd_support}


def main(argv=None, stdout=None) -> int:
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cache = ResultCache(CacheConfig(args.cache_dir))
    ok_all = True
    try:
        if args.command in _BRAID_CMDS or args.command in _WORD_CMDS:
            if args.command in _BRAID_CMDS:
                items, fn = _read_inputs(args, parse_braid), _BRAID_CMDS[args.command]
            else:
                items, fn = _read_inputs(args, parse_resolved), _WORD_CMDS[args.command]
            for item in items:
                res, ok = fn(item, args, cache)
                ok_all = ok_all and ok
                print(_render(res, args.format), file=out)
        else:
            res, ok_all = _cmd_chi(args) if args.command == "chi-check" else _cmd_verify(args)
            print(_render(res, args.format), file=out)
    except BraidParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_PARSE
    except HomflyBudgetError as exc:
        print(f"error: {exc} {exc.stats}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK if ok_all else EXIT_FAIL


def entry() -> None:  # pragma: no cover - console script
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry()
