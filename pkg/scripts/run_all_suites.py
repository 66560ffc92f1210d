#!/usr/bin/env python3
"""Run every suite for every family and write reports under reports/.

Usage: python3 scripts/run_all_suites.py [--samples N] [--seed S] [--out DIR]
"""

import argparse
import pathlib
import sys
import time

from simdual.report import emit_report
from simdual.suites import SuiteConfig, run_suite

FAMILIES = ("symplectic", "orthogonal", "hermitian", "skew-hermitian",
            "general-linear")
FINITE = (("sp", 2, 3), ("gsp", 2, 3), ("u", 2, 3), ("gu", 2, 3),
          ("o+", 2, 3), ("o-", 2, 3), ("gl", 2, 3), ("sp", 2, 5))


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", default="reports")
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(exist_ok=True)
    failures = 0

    for family in FAMILIES:
        cfg = SuiteConfig(family=family, samples=args.samples, seed=args.seed,
                          suites=("identity", "cayley", "lattice"))
        t0 = time.time()
        rep = run_suite(cfg)
        path = out / f"{family.replace('-', '_')}.json"
        path.write_text(emit_report(rep, "json"))
        print(f"{family:15s} {rep.summary()}  {time.time()-t0:6.2f}s -> {path}")
        failures += rep.summary()["fail"]

    cfg = SuiteConfig(family="symplectic", seed=args.seed,
                      suites=("decompose",), cosets=3)
    t0 = time.time()
    rep = run_suite(cfg)
    (out / "decompose.json").write_text(emit_report(rep, "json"))
    print(f"{'decompose':15s} {rep.summary()}  {time.time()-t0:6.2f}s")
    failures += rep.summary()["fail"]

    for family, n, q in FINITE:
        cfg = SuiteConfig(family=family, n=n, p=q, suites=("finite-dual",))
        t0 = time.time()
        rep = run_suite(cfg)
        tag = f"finite_{family.replace('+', 'plus').replace('-', 'minus')}_{n}_{q}"
        (out / f"{tag}.json").write_text(emit_report(rep, "json"))
        print(f"{family}({n},{q}):".ljust(15), rep.summary(),
              f" {time.time()-t0:6.2f}s")
        failures += rep.summary()["fail"]

    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
