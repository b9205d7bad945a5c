"""Exact combinatorics and polyhedral geometry of matrix Schubert varieties."""

__version__ = "0.1.0"
