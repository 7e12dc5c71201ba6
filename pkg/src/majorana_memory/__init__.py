"""Temporary minimal init during bootstrap."""
__version__ = "0.1.0"
