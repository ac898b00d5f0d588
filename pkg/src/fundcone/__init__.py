"""Exact fundamental-cone and pseudoweight toolkit for binary linear codes."""

__version__ = "0.1.0"
