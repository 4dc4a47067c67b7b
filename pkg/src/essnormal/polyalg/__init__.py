"""Exact polynomial arithmetic over Q(i)."""

from .coeff import I, ONE, ZERO, GaussianRational
from .groebner import buchberger, divide, is_groebner_basis, normal_form, s_polynomial
from .order import GREVLEX, LEX, MonomialOrder, block, monomials_of_degree
from .parse import ParseError, parse_polynomial
from .poly import Polynomial, linear_combination, variables

__all__ = [
    "GaussianRational", "ZERO", "ONE", "I",
    "MonomialOrder", "GREVLEX", "LEX", "block", "monomials_of_degree",
    "Polynomial", "variables", "linear_combination",
    "normal_form", "divide", "s_polynomial", "buchberger", "is_groebner_basis",
    "parse_polynomial", "ParseError",
]
