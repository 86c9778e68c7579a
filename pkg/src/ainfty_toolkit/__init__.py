"""Exact A∞-categories: twisted complexes, bar-construction localization, functors and nerves."""

__version__ = "0.1.0"
