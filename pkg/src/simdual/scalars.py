"""Exact scalars for a p-adic base field and its unramified quadratic extension.

The base field is modeled by the rationals carrying the p-adic valuation
(``p`` an odd prime, uniformizer fixed to ``p`` itself).  The quadratic
extension adjoins ``sqrt(u)`` for ``u`` the smallest positive non-residue
unit mod p; the "split" tag means no extension at all.  A second, finite
mode truncates everything to ``Z/p^N`` (resp. its quadratic extension),
which is what all exhaustive enumerations run over.  ``N = 1`` gives the
finite fields F_p and F_{p^2}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

INF = math.inf

SPLIT = "split"
INERT = "inert"


class NotIntegralError(ValueError):
    """Raised when an operation requires valuation >= 0 and the input fails."""


class NotUnitError(ZeroDivisionError):
    """Division by a non-unit in a truncated ring."""


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    """Smallest positive quadratic non-residue unit mod p."""
    for u in range(2, p):
        if pow(u, (p - 1) // 2, p) == p - 1:
            return u
    raise ValueError(f"no quadratic non-residue mod {p}")


def val_int(n: int, p: int):
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_fraction(x: Fraction, p: int):
    """p-adic valuation of a rational; INF for zero."""
    if x == 0:
        return INF
    return val_int(x.numerator, p) - val_int(x.denominator, p)


def canonical_residue(x: Fraction, p: int, N: int) -> int:
    """The integer in [0, p^N) congruent to x, for x with val >= 0."""
    x = Fraction(x)
    if val_fraction(x, p) < 0:
        raise NotIntegralError(f"{x} has negative {p}-adic valuation")
    m = p**N
    return x.numerator * pow(x.denominator, -1, m) % m


@dataclass(frozen=True)
class Ring:
    """Scalar ring context: (p, extension tag, optional truncation precision).

    ``prec=None`` means exact rational arithmetic; ``prec=N`` means Z/p^N
    (with sqrt(u) adjoined in the inert case).
    """

    p: int
    ext: str = SPLIT
    prec: int | None = None

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.ext not in (SPLIT, INERT):
            raise ValueError(f"unknown extension tag {self.ext!r}")
        if self.prec is not None and self.prec < 1:
            raise ValueError("precision must be >= 1")

    @property
    def exact(self) -> bool:
        return self.prec is None

    @property
    def u(self) -> int:
        if self.ext != INERT:
            raise ValueError("split ring has no extension generator")
        return smallest_nonresidue(self.p)

    @property
    def modulus(self) -> int:
        if self.prec is None:
            raise ValueError("exact ring has no modulus")
        return self.p**self.prec

    # -- constructors -------------------------------------------------

    def scalar(self, a, b=0) -> "Scalar":
        if b != 0 and self.ext != INERT:
            raise ValueError("nonzero sqrt(u)-part in a split ring")
        if self.exact:
            return Scalar(self, Fraction(a), Fraction(b))
        m = self.modulus
        if isinstance(a, Fraction):
            a = canonical_residue(a, self.p, self.prec)
        if isinstance(b, Fraction):
            b = canonical_residue(b, self.p, self.prec)
        return Scalar(self, a % m, b % m)

    @property
    def zero(self) -> "Scalar":
        return self.scalar(0)

    @property
    def one(self) -> "Scalar":
        return self.scalar(1)

    @property
    def gen(self) -> "Scalar":
        """sqrt(u), the extension generator."""
        return self.scalar(0, 1)

    def truncated(self, N: int) -> "Ring":
        return Ring(self.p, self.ext, N)

    def residues(self):
        """All scalars of a truncated ring, in canonical (lexicographic) order."""
        if self.exact:
            raise ValueError("cannot enumerate an exact ring")
        m = self.modulus
        if self.ext == SPLIT:
            for a in range(m):
                yield Scalar(self, a, 0)
        else:
            for a in range(m):
                for b in range(m):
                    yield Scalar(self, a, b)


class Scalar:
    """An element a + b*sqrt(u) of F or E, exact or truncated."""

    __slots__ = ("ring", "a", "b")

    def __init__(self, ring: Ring, a, b):
        self.ring = ring
        self.a = a
        self.b = b

    # -- basics -------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self.ring.p},{self.ring.ext},{self.ring.prec}: {self})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*s"

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise ValueError("mixed scalar rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    # -- ring operations ----------------------------------------------

    def _wrap(self, a, b):
        if self.ring.exact:
            return Scalar(self.ring, a, b)
        m = self.ring.modulus
        return Scalar(self.ring, a % m, b % m)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._wrap(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._wrap(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        if b == 0 and d == 0:
            return self._wrap(a * c, 0)
        u = self.ring.u
        return self._wrap(a * c + u * b * d, a * d + b * c)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        ring = self.ring
        if self.b == 0:
            if ring.exact:
                if self.a == 0:
                    raise ZeroDivisionError("inverse of zero")
                return Scalar(ring, 1 / Fraction(self.a), Fraction(0))
            try:
                return Scalar(ring, pow(self.a, -1, ring.modulus), 0)
            except ValueError:
                raise NotUnitError(f"{self} is not a unit mod {ring.p}^{ring.prec}")
        # (a + b s)^-1 = (a - b s) / (a^2 - u b^2)
        u = ring.u
        n = self.a * self.a - u * self.b * self.b
        if ring.exact:
            if n == 0:
                raise ZeroDivisionError("inverse of zero")
            return Scalar(ring, self.a / Fraction(n), -self.b / Fraction(n))
        try:
            ninv = pow(n % ring.modulus, -1, ring.modulus)
        except ValueError:
            raise NotUnitError(f"{self} is not a unit mod {ring.p}^{ring.prec}")
        return self._wrap(self.a * ninv, -self.b * ninv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    # -- Galois structure ---------------------------------------------

    def tau(self) -> "Scalar":
        """Conjugation a + b*s -> a - b*s; identity on the base field."""
        if self.b == 0:
            return self
        return self._wrap(self.a, -self.b)

    def norm(self) -> "Scalar":
        """x * tau(x); always has zero sqrt(u)-part."""
        return self * self.tau()

    def is_in_base(self) -> bool:
        return self.b == 0

    # -- valuation and integrality ------------------------------------

    def val(self):
        """p-adic valuation (min over components for the unramified extension)."""
        if not self.ring.exact:
            p, m = self.ring.p, self.ring.modulus
            if self.a == 0 and self.b == 0:
                return INF
            vs = [val_int(c % m, p) for c in (self.a, self.b) if c % m != 0]
            return min(min(vs), self.ring.prec)
        return min(val_fraction(Fraction(self.a), self.ring.p),
                   val_fraction(Fraction(self.b), self.ring.p))

    def is_integral(self) -> bool:
        if not self.ring.exact:
            return True
        return self.val() >= 0

    def is_unit(self) -> bool:
        if self.ring.exact:
            return bool(self) and self.val() == 0
        p = self.ring.p
        if self.b % p == 0:
            return self.a % p != 0
        if self.ring.ext == SPLIT:
            return self.a % p != 0
        return (self.a * self.a - self.ring.u * self.b * self.b) % p != 0

    # -- mode changes -------------------------------------------------

    def reduce(self, N: int) -> "Scalar":
        """Reduce an integral exact scalar mod p^N (a ring homomorphism)."""
        if not self.ring.exact:
            if N > self.ring.prec:
                raise ValueError("cannot increase precision of a truncated scalar")
            m = self.ring.p**N
            return Scalar(self.ring.truncated(N), self.a % m, self.b % m)
        p = self.ring.p
        a = canonical_residue(Fraction(self.a), p, N)
        b = canonical_residue(Fraction(self.b), p, N)
        return Scalar(self.ring.truncated(N), a, b)

    def lift(self) -> "Scalar":
        """Tautological lift of a truncated scalar to an exact integer scalar."""
        if self.ring.exact:
            return self
        ring = Ring(self.ring.p, self.ring.ext, None)
        return Scalar(ring, Fraction(self.a), Fraction(self.b))


# -- square roots -----------------------------------------------------


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of a mod p, or None.  p is small here; a direct scan."""
    a %= p
    for r in range((p + 1) // 2):
        if r * r % p == a:
            return r
    return None


def sqrt_mod_prime_power(a: int, p: int, N: int) -> int | None:
    """A square root of the unit a mod p^N via Newton lifting, or None."""
    a %= p**N
    if a % p == 0:
        raise ValueError("sqrt_mod_prime_power requires a unit argument")
    r = sqrt_mod_prime(a, p)
    if r is None:
        return None
    k = 1
    while k < N:
        k = min(2 * k, N)
        m = p**k
        r = (r + a * pow(r, -1, m)) * pow(2, -1, m) % m
    return r


def hensel_sqrt_one_plus(mu, k: int, N: int, p: int | None = None) -> "Scalar":
    """The unique lambda = 1 mod p^k with lambda^2 = mu mod p^N.

    ``mu`` may be a Scalar (base-field part only), Fraction or int.  Requires
    mu = 1 mod p^k, k >= 1 and N >= k; p odd makes the root unique.
    """
    if isinstance(mu, Scalar):
        if mu.b != 0:
            raise ValueError("mu must lie in the base field")
        p = mu.ring.p
        mu_val = mu.a
    else:
        if p is None:
            raise ValueError("p required for a bare rational mu")
        mu_val = Fraction(mu)
    if k < 1 or N < k:
        raise ValueError("need 1 <= k <= N")
    m = canonical_residue(Fraction(mu_val), p, N)
    if (m - 1) % p**k != 0:
        raise ValueError(f"mu = {mu_val} is not 1 mod {p}^{k}")
    r = 1
    j = 1
    while j < N:
        j = min(2 * j, N)
        mod = p**j
        r = (r + m * pow(r, -1, mod)) * pow(2, -1, mod) % mod
    # Of the two roots +-r, exactly one is 1 mod p^k.
    if (r - 1) % p**k != 0:
        r = (-r) % p**N
    assert (r - 1) % p**k == 0 and (r * r - m) % p**N == 0
    return Ring(p, SPLIT, N).scalar(r)


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None if x is not a square."""
    x = Fraction(x)
    if x < 0:
        return None
    if x == 0:
        return Fraction(0)
    n = math.isqrt(x.numerator)
    d = math.isqrt(x.denominator)
    if n * n != x.numerator or d * d != x.denominator:
        return None
    return Fraction(n, d)
