#!/usr/bin/env python3
"""Survey the dualizing-involution criterion over small finite groups.

For every (family, n, q) within the scan budget: build the group table,
compute conjugacy classes, and check that iota(g) is conjugate to g^-1 on
every class, with a theta-symmetric conjugator witness per class.

Usage: python3 scripts/finite_duality_survey.py [--budget B]
"""

import argparse
import sys
import time

from simdual.finite import (BudgetExceeded, build_group, conjugacy_classes,
                            verify_class_inversion)

TARGETS = [
    ("sp", 2, 3), ("gsp", 2, 3), ("sp", 2, 5), ("gsp", 2, 5),
    ("u", 2, 3), ("gu", 2, 3),
    ("o+", 2, 3), ("o-", 2, 3), ("o+", 2, 5), ("o-", 2, 5),
    ("gl", 2, 3), ("gl", 2, 5), ("gl", 3, 3),
]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--budget", type=int, default=10**7,
                    help="maximum matrix-scan size")
    args = ap.parse_args()
    print(f"{'group':12s} {'order':>7s} {'classes':>7s} "
          f"{'criterion':>9s} {'seconds':>8s}")
    bad = 0
    for family, n, q in TARGETS:
        t0 = time.time()
        try:
            table = build_group(family, n, q, scan_budget=args.budget)
        except BudgetExceeded:
            print(f"{family}({n},{q})".ljust(12), "  (skipped: over budget)")
            continue
        classes = conjugacy_classes(table)
        rep = verify_class_inversion(table, classes)
        verdict = "holds" if rep.passed else "FAILS"
        if not rep.passed:
            bad += 1
            for row in rep.rows:
                if row.status != "pass":
                    print(f"    class of {row.rep}: iota-class "
                          f"{row.iota_class}, inverse-class "
                          f"{row.inverse_class}, conjugator {row.conjugator}")
        print(f"{family}({n},{q})".ljust(12),
              f"{table.order:7d} {classes.num_classes:7d} "
              f"{verdict:>9s} {time.time()-t0:8.2f}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
