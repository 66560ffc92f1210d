"""Exact-arithmetic verification of similitude Cayley transforms,
lattice/congruence filtrations, conjugate-stable decompositions, and the
dualizing-involution property of classical and similitude groups."""

__version__ = "0.1.0"
