"""Exact computations with triples of flags and the flats they span in the A2 building."""

__version__ = "0.1.0"
