"""Exact symmetric-group representation combinatorics and Lie closure tools."""

__version__ = "0.1.0"
