#!/usr/bin/env python3
"""Empirical probes for the questions the implementation leaves open.

triangle  Does the triangle rule ever make the rewriter's a-support strictly
          larger than the true one?  Every inexact support is compared with
          the Koszul oracle in the ax theory.
proxy     How the mirror-based n=2 sl bound and the classical HOMFLY bound
          move under negative stabilization.
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from krbraid.braids import all_braid_words, all_resolved_words
from krbraid.bounds import sl_report
from krbraid.koszul import RingSpec, build, graded_homology
from krbraid.moy import a_support_H


@dataclass
class ProbeConfig:
    max_strands: int = 4
    max_length: int = 5
    braid_strands: int = 3
    braid_length: int = 4


def triangle(cfg: ProbeConfig) -> dict:
    seen = inexact = strict = 0
    examples = []
    for b in range(1, cfg.max_strands + 1):
        for mu in all_resolved_words(b, cfg.max_length):
            seen += 1
            s = a_support_H(mu)
            if s.exact:
                continue
            inexact += 1
            oracle = graded_homology(build(mu, RingSpec.Hax())).a_support()
            if oracle != set(s.degrees):
                strict += 1
                examples.append({"word": mu.format(), "rewriter": sorted(s.degrees), "oracle": sorted(oracle)})
    return {"words": seen, "inexact": inexact, "strict": strict, "examples": examples[:20]}


def proxy(cfg: ProbeConfig) -> dict:
    deltas: dict = {}
    for b in range(1, cfg.braid_strands + 1):
        for B in all_braid_words(b, cfg.braid_length):
            r0, r1 = sl_report(B).raw, sl_report(B.stabilize_neg()).raw
            key = (r1["sl"] - r0["sl"], r1["classical"] - r0["classical"], r1["n2_proxy"] - r0["n2_proxy"])
            deltas[key] = deltas.get(key, 0) + 1
    # half-ticks: (d sl, d classical, d proxy) -> count
    return {"half_tick_deltas": [{"sl": k[0], "classical": k[1], "proxy": k[2], "count": v} for k, v in sorted(deltas.items())]}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("probe", choices=("triangle", "proxy", "all"))
    for f, v in asdict(ProbeConfig()).items():
        ap.add_argument("--" + f.replace("_", "-"), type=int, default=v)
    a = ap.parse_args(argv)
    cfg = ProbeConfig(a.max_strands, a.max_length, a.braid_strands, a.braid_length)
    out = {}
    if a.probe in ("triangle", "all"):
        out["triangle"] = triangle(cfg)
    if a.probe in ("proxy", "all"):
        out["proxy"] = proxy(cfg)
    print(json.dumps(out, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
