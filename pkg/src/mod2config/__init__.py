"""Exact mod-2 algebra behind configuration-space embedding obstructions."""
__version__ = "0.1.0"
