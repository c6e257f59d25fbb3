"""Exact computer algebra for smash products and their cohomology."""

__version__ = "0.1.0"
