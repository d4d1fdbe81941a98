"""Finite reductive group volumes, Frobenius fields of curves, and sieve bounds."""

__version__ = "0.1.0"
