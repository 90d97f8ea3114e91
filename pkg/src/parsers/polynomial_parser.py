"""
Polynomial text parser.

Reads the PolyQ text form: sums of products of integers, ``p/q``
rationals, parameter names and parenthesized subexpressions, with
``^`` or ``**`` for nonnegative integer powers. Division is allowed
only by nonzero constants. The canonical output of ``str(PolyQ)`` is
always accepted.
"""

import re
from fractions import Fraction
from typing import Collection, List, Optional, Tuple

from ..models.polynomial import PolyQ


class PolynomialParsingError(ValueError):
    """Custom exception for malformed polynomial text."""

    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens: List[Tuple[str, str]] = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = _TOKEN.match(stripped, position)
        if not match:
            raise PolynomialParsingError(f"Unexpected character at {position} in '{text}'")
        number, name, symbol = match.groups()
        if number is not None:
            tokens.append(("num", number))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if symbol == "**" else symbol))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, allowed: Optional[Collection[str]]):
        self.text = text
        self.tokens = _tokenize(text)
        self.position = 0
        self.allowed = None if allowed is None else set(allowed)

    def peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def take(self) -> Tuple[str, str]:
        token = self.peek()
        if token is None:
            raise PolynomialParsingError(f"Unexpected end of '{self.text}'")
        self.position += 1
        return token

    def expect(self, symbol: str) -> None:
        kind, value = self.take()
        if kind != "op" or value != symbol:
            raise PolynomialParsingError(f"Expected '{symbol}' but found '{value}' in '{self.text}'")

    def parse(self) -> PolyQ:
        if not self.tokens:
            raise PolynomialParsingError("Empty polynomial text")
        result = self.expression()
        if self.peek() is not None:
            raise PolynomialParsingError(f"Trailing '{self.peek()[1]}' in '{self.text}'")
        return result

    def expression(self) -> PolyQ:
        result = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, sign = self.take()
            right = self.term()
            result = result + right if sign == "+" else result - right
        return result

    def term(self) -> PolyQ:
        result = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, operator = self.take()
            right = self.unary()
            if operator == "*":
                result = result * right
                continue
            if not right.is_constant or right.is_zero:
                raise PolynomialParsingError(f"Division by '{right}' in '{self.text}'")
            result = result * (1 / right.constant_value)
        return result

    def unary(self) -> PolyQ:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> PolyQ:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, value = self.take()
            if kind != "num":
                raise PolynomialParsingError(f"Exponent must be a nonnegative integer in '{self.text}'")
            result = PolyQ.constant(1)
            for _ in range(int(value)):
                result = result * base
            return result
        return base

    def atom(self) -> PolyQ:
        kind, value = self.take()
        if kind == "num":
            return PolyQ.constant(Fraction(int(value)))
        if kind == "name":
            if self.allowed is not None and value not in self.allowed:
                raise PolynomialParsingError(f"Undeclared parameter '{value}' in '{self.text}'")
            return PolyQ.variable(value)
        if value == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        raise PolynomialParsingError(f"Unexpected '{value}' in '{self.text}'")


def parse_polynomial(text: str, allowed: Optional[Collection[str]] = None) -> PolyQ:
    """
    Parse PolyQ text.

    Args:
        text: Expression such as ``2 + alpha`` or ``-1/2*a*a``
        allowed: Parameter names that may appear; any name when None

    Returns:
        PolyQ: The polynomial

    Raises:
        PolynomialParsingError: If the text is malformed or uses an
            undeclared parameter
    """
    return _Parser(text, allowed).parse()
