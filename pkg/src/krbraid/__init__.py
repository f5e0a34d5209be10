"""Exact Khovanov-Rozansky workbench for braids."""

__version__ = "0.1.0"
