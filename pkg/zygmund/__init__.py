"""Wavelet analysis of weighted Zygmund and Hoelder regularity."""

__version__ = "1.0.0"
