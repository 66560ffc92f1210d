from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simdual.scalars import (INERT, INF, SPLIT, NotIntegralError, NotUnitError,
                             Ring, canonical_residue, hensel_sqrt_one_plus,
                             is_odd_prime, rational_sqrt, smallest_nonresidue,
                             sqrt_mod_prime_power, val_fraction)


def test_is_odd_prime():
    assert [p for p in range(20) if is_odd_prime(p)] == [3, 5, 7, 11, 13, 17, 19]


def test_smallest_nonresidue():
    assert smallest_nonresidue(3) == 2
    assert smallest_nonresidue(5) == 2
    assert smallest_nonresidue(7) == 3


def test_val_fraction():
    assert val_fraction(Fraction(18), 3) == 2
    assert val_fraction(Fraction(1, 9), 3) == -2
    assert val_fraction(Fraction(0), 3) == INF


def test_canonical_residue():
    assert canonical_residue(Fraction(1, 2), 3, 2) == 5
    assert canonical_residue(Fraction(-1), 3, 2) == 8
    with pytest.raises(NotIntegralError):
        canonical_residue(Fraction(1, 3), 3, 2)


def test_ring_validation():
    with pytest.raises(ValueError):
        Ring(4)
    with pytest.raises(ValueError):
        Ring(3, "weird")
    with pytest.raises(ValueError):
        Ring(3, SPLIT, 0)


def test_scalar_field_arithmetic():
    ring = Ring(3, INERT)
    s = ring.gen
    x = ring.scalar(2, 1)
    assert (s * s) == ring.scalar(ring.u)
    assert x * x.inv() == ring.one
    assert x.tau() == ring.scalar(2, -1)
    assert x.norm() == ring.scalar(4 - ring.u)
    assert x.norm().is_in_base()


def test_scalar_truncated_units():
    ring = Ring(3, SPLIT, 2)
    assert ring.scalar(2).inv() * ring.scalar(2) == ring.one
    with pytest.raises(NotUnitError):
        ring.scalar(3).inv()
    assert not ring.scalar(6).is_unit()
    assert ring.scalar(Fraction(1, 2)) == ring.scalar(5)


def test_scalar_reduce_lift():
    ring = Ring(3, SPLIT)
    x = ring.scalar(Fraction(1, 2))
    assert x.reduce(2).a == 5
    assert x.reduce(2).lift().a == 5


def test_residue_enumeration():
    ring = Ring(3, INERT, 1)
    res = list(ring.residues())
    assert len(res) == 9
    assert len(set((r.a, r.b) for r in res)) == 9


def test_hensel_pinned_values():
    # unique root congruent to 1 mod p
    assert hensel_sqrt_one_plus(4, 1, 3, p=3).a == 25
    assert hensel_sqrt_one_plus(6, 1, 2, p=5).a == 16


def test_hensel_rejects_bad_input():
    with pytest.raises(ValueError):
        hensel_sqrt_one_plus(2, 1, 3, p=3)   # 2 is not 1 mod 3
    with pytest.raises(ValueError):
        hensel_sqrt_one_plus(4, 0, 3, p=3)


def test_sqrt_mod_prime_power():
    r = sqrt_mod_prime_power(4, 3, 3)
    assert r is not None and r * r % 27 == 4
    assert sqrt_mod_prime_power(2, 3, 3) is None
    with pytest.raises(ValueError):
        sqrt_mod_prime_power(3, 3, 2)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None


@settings(max_examples=60)
@given(st.integers(-50, 50), st.integers(-50, 50),
       st.integers(-50, 50), st.integers(-50, 50))
def test_inert_field_axioms(a, b, c, d):
    ring = Ring(5, INERT)
    x = ring.scalar(a, b)
    y = ring.scalar(c, d)
    assert (x * y).tau() == x.tau() * y.tau()
    assert (x + y).tau() == x.tau() + y.tau()
    if bool(x):
        assert x * x.inv() == ring.one


@settings(max_examples=60)
@given(st.integers(0, 26), st.integers(0, 26))
def test_truncated_ring_homomorphism(a, b):
    exact = Ring(3, SPLIT)
    x, y = exact.scalar(a), exact.scalar(b)
    assert (x * y).reduce(2) == x.reduce(2) * y.reduce(2)
    assert (x + y).reduce(2) == x.reduce(2) + y.reduce(2)


@settings(max_examples=40)
@given(st.integers(1, 80))
def test_hensel_root_property(m):
    p, k, N = 3, 1, 4
    mu = 1 + p * m
    lam = hensel_sqrt_one_plus(mu, k, N, p=p)
    assert (lam.a * lam.a - mu) % p**N == 0
    assert (lam.a - 1) % p**k == 0
