"""
Parsers for polynomial text and the algebra interchange format.
"""

from .algebra_parser import AlgebraParser, AlgebraParsingError
from .polynomial_parser import PolynomialParsingError, parse_polynomial

__all__ = ['AlgebraParser', 'AlgebraParsingError', 'PolynomialParsingError', 'parse_polynomial']
