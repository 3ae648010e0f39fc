"""Certificate-checked slide calculus for curves on closed oriented surfaces."""

__version__ = "0.1.0"
