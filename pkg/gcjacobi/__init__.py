"""Exact computations in the general Lie conformal algebra gc_N."""

__version__ = "0.1.0"
