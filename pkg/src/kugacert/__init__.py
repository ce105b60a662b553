"""kugacert - exact certificates for compactified Kuga varieties."""

__version__ = "1.0.0"
