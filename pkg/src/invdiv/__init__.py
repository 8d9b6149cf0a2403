"""Exact computations around totally invariant divisors of endomorphisms of
projective space."""

__version__ = "0.1.0"
