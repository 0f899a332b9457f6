"""Exact verification of deformed Lorentz groups and their Minkowski algebras."""

from .coeff import Coefficient, const, param
from .lorentz import LorentzCase, catalog, make_case
from .minkowski import reflection_relations, minkowski_length
from .parse import parse_expression

__version__ = "0.1.0"

__all__ = [
    "Coefficient",
    "LorentzCase",
    "catalog",
    "const",
    "make_case",
    "minkowski_length",
    "param",
    "parse_expression",
    "reflection_relations",
]
