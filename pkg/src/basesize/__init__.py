"""Base-size measures for primitive actions of simple algebraic groups."""

__version__ = "0.1.0"
