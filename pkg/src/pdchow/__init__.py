"""Exact models of divided powers, tautological rings and integral Fourier
transforms for hyperelliptic Jacobians."""

__version__ = "0.1.0"
