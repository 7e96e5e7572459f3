"""Tutte polynomials and multiplicities of group actions on semimatroids."""

__version__ = "0.1.0"
