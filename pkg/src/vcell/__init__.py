"""Exact algebra for Vandermonde cells: boundary curves, canonical forms,
residues and dual volumes, all over the rationals."""

__version__ = "0.1.0"
