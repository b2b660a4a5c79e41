"""Permutation-invariant qudit codes from polynomials, with exact certification."""

__version__ = "0.1.0"
