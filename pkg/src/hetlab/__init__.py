"""Exact-arithmetic verification lab for heterotic torus geometries."""

__version__ = "0.1.0"
