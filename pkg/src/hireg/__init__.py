"""Construction and verification of a highly regular graph family over GF(2)."""

__version__ = "0.1.0"
