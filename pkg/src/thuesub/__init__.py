"""Nonrepetitive 3-colorings of graph subdivisions, with independent verification."""

__version__ = "0.1.0"
