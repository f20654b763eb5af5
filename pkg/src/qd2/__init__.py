"""Exact constructions, bounds and symmetry searches for distance-2 quantum codes."""

__version__ = "0.1.0"
