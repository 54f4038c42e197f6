"""Computational checks around the evasiveness conjecture for graph properties."""

__version__ = "0.1.0"
