"""Braided Frobenius algebras from Hopf algebras, verified by exact tensor arithmetic."""

__version__ = "0.1.0"
