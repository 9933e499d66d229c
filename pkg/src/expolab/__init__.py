"""Exponent optimization and numerical checks for a mixed-moment error-term lemma."""

__version__ = "0.1.0"
