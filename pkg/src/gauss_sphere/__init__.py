"""Lattice points in 3-balls: exact counts, iterated integrals N_{3,k}, their
Bessel/trigonometric series, lattice-sum constants and smeared checks."""

__version__ = "0.1.0"
