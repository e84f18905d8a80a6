"""Exact polynomial and ideal arithmetic over Q."""

from .groebner import MonomialOrder, default_order, groebner_basis, normal_form
from .ideal import (
    Ideal,
    UnsupportedMultiplicity,
    eliminate,
    ideal_dimension,
    saturate,
    substitute,
    variety_contained,
)
from .poly import (
    ParseError,
    Polynomial,
    RationalFunction,
    Ring,
    UndefinedSubstitution,
    divide_exact,
    parse,
    parse_polynomial,
)

__all__ = [
    "Ideal", "MonomialOrder", "ParseError", "Polynomial", "RationalFunction", "Ring",
    "UndefinedSubstitution", "UnsupportedMultiplicity", "default_order", "divide_exact",
    "eliminate", "groebner_basis", "ideal_dimension", "normal_form", "parse",
    "parse_polynomial", "saturate", "substitute", "variety_contained",
]
