"""Integral circle packings from the octahedral, cubic, square and triangular families."""

__version__ = "0.1.0"
