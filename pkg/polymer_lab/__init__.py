"""Numerical laboratory for two-dimensional directed polymers in random environment."""

__version__ = "0.1.0"
