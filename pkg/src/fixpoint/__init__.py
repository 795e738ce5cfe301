"""Halpern-type anchored iterations for common fixed points and common zeros."""

__version__ = "0.1.0"
