"""Herbrand-consistency machinery for first-order arithmetic."""

__version__ = "0.1.0"
