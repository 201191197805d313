"""Exact model sets from cut-and-project schemes, with Meyer-set and
finite-scale dynamical verification tools."""

from .exact import QuadRational, Rational, parse_scalar, format_scalar

__all__ = [
    "QuadRational",
    "Rational",
    "parse_scalar",
    "format_scalar",
]

__version__ = "0.1.0"
