"""Exact verification of Hopf-Galois and coalgebra-Galois structures."""

__version__ = "0.1.0"
