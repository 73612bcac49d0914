"""rigikit: exact character-theoretic computations on desk-scale finite groups."""

from .cyclo import Cyclotomic, Rational, cyc, format_value, parse_value, zeta

__all__ = [
    "Cyclotomic",
    "Rational",
    "cyc",
    "zeta",
    "parse_value",
    "format_value",
]

__version__ = "0.1.0"
