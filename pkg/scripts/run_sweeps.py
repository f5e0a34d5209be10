#!/usr/bin/env python3
"""Run every verify suite and write one JSON summary.

    python3 scripts/run_sweeps.py --out sweeps.json --seed 3
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass

from krbraid.verify import DEFAULTS, SUITES, run_suite


@dataclass
class SweepConfig:
    suites: tuple
    seed: int = 0
    out: str | None = None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suite", action="append", choices=sorted(SUITES), help="repeatable; default all")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None)
    a = ap.parse_args(argv)
    cfg = SweepConfig(tuple(a.suite or sorted(SUITES)), a.seed, a.out)

    rows = []
    for name in cfg.suites:
        t0 = time.perf_counter()
        res = run_suite(name, DEFAULTS[name], seed=cfg.seed).to_json()
        res["seconds"] = round(time.perf_counter() - t0, 2)
        rows.append(res)
        print(f"{name:20s} {'PASS' if res['pass'] else 'FAIL'} checked={res['checked']} {res['seconds']}s", file=sys.stderr)
    text = json.dumps(rows, indent=2, sort_keys=True)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if all(r["pass"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
