#!/usr/bin/env python3
"""Exhaustive census of Cayley-map fibers over a truncated ring.

Enumerates every Lie element in the working domain mod p^N, buckets the
images, and cross-checks each bucket against the per-element fiber
computation (affine solves).  Prints the tag distribution and any
mismatch between the two independent computations.

Usage: python3 scripts/fiber_census.py [--prime P] [--precision N] [--dim n]
"""

import argparse
import sys
from collections import Counter

from simdual.cayley import cayley, enumerate_lie, fiber, in_domain
from simdual.scalars import SPLIT, Ring
from simdual.spaces import SYMPLECTIC, standard_space


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--prime", type=int, default=3)
    ap.add_argument("--precision", type=int, default=2)
    ap.add_argument("--dim", type=int, default=2)
    args = ap.parse_args()

    ring = Ring(args.prime, SPLIT, args.precision)
    space = standard_space(SYMPLECTIC, args.dim, ring)

    buckets = {}
    images = {}
    for lie in enumerate_lie(space):
        if not in_domain(lie):
            continue
        img = cayley(lie)
        buckets.setdefault(img.mat.key(), []).append(lie.mat.key())
        images[img.mat.key()] = img
    print(f"domain images mod {args.prime}^{args.precision}: {len(buckets)}")

    tags = Counter()
    sizes = Counter()
    mismatches = 0
    for key in sorted(buckets):
        res = fiber(images[key])
        tags[res.tag] += 1
        sizes[len(buckets[key])] += 1
        got = sorted(p.X.mat.key() for p in res.domain_preimages())
        if got != sorted(buckets[key]):
            mismatches += 1
            print("MISMATCH at image", images[key].mat.to_text())

    print("fiber tags:", dict(sorted(tags.items())))
    print("fiber sizes:", dict(sorted(sizes.items())))
    print("mismatches:", mismatches)
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
