"""Seeded deterministic sampling of Lie-algebra and group elements.

Lie elements are drawn in the coordinates of the similitude (or isometry)
Lie algebra with rational coefficients of bounded numerator size and
bounded denominator p-valuation, then rejection-sampled into the working
domain of the Cayley map.  Group elements are built as scalar multiples
of products of Cayley images, so membership is certified by construction.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .cayley import cayley, in_domain
from .involution import theta_group
from .lattices import StandardLattices
from .spaces import GroupElem, LieElem, certify_group, certify_lie


class SamplingError(RuntimeError):
    pass


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def _coefficient(rng: random.Random, p: int, numerator_bound: int,
                 denominator_valuation: int) -> Fraction:
    num = rng.randint(-numerator_bound, numerator_bound)
    den = p ** rng.randint(0, denominator_valuation)
    return Fraction(num, den)


def sample_lie(std: StandardLattices, rng: random.Random,
               isometry: bool = False, numerator_bound: int = 20,
               denominator_valuation: int = 1,
               max_rejects: int = 200) -> LieElem:
    """A random certified Lie element inside the working domain."""
    coords = std.u_coords if isometry else std.gu_coords
    space = coords.space
    for _ in range(max_rejects):
        c = [_coefficient(rng, space.ring.p, numerator_bound,
                          denominator_valuation) for _ in range(coords.m)]
        X = certify_lie(space, coords.from_coords(c))
        if in_domain(X):
            return X
    raise SamplingError("rejection sampling exhausted its attempt budget")


def sample_integral_lie(std: StandardLattices, rng: random.Random,
                        level: int = 1, numerator_bound: int = 20) -> LieElem:
    """A random element of p^level * Ldot (always in the working domain
    for level >= 1)."""
    coords = std.gu_coords
    space = coords.space
    pk = space.ring.p ** level
    c = [Fraction(rng.randint(-numerator_bound, numerator_bound) * pk)
         for _ in range(coords.m)]
    return certify_lie(space, coords.from_coords(c))


def sample_group(std: StandardLattices, rng: random.Random,
                 isometry: bool = False, factors: int = 2) -> GroupElem:
    """A random certified group element: scalar * product of Cayley images.

    Isometry mode drops the scalar and uses isometry Lie elements, so the
    multiplier is 1.
    """
    space = std.space
    g = None
    for _ in range(factors):
        f = cayley(sample_lie(std, rng, isometry=isometry))
        g = f if g is None else g * f
    if not isometry:
        p = space.ring.p
        s = rng.randint(1, 5 * p)
        while s % p == 0:
            s = rng.randint(1, 5 * p)
        g = GroupElem(space, g.mat * s, g.mu * (s * s))
    return certify_group(space, g.mat)


def sample_theta_fixed(std: StandardLattices, rng: random.Random) -> GroupElem:
    """A random theta-fixed group element: theta(g) * g is always fixed
    because theta is an involutive anti-automorphism."""
    g = sample_group(std, rng, isometry=True)
    x = theta_group(g) * g
    return certify_group(std.space, x.mat)


def sample_stabilizing(std: StandardLattices, rng: random.Random) -> GroupElem:
    """A random group element whose conjugation preserves the standard Lie
    lattice: the Cayley image of an integral element of p * Ldot is
    congruent to 1 mod p, hence integral with integral inverse."""
    X = sample_integral_lie(std, rng, level=1)
    return cayley(X)
