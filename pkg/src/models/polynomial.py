"""
Sparse multivariate polynomials with rational coefficients.

A polynomial is a mapping from monomials to Fractions. A monomial is a
sorted tuple of ``(parameter, exponent)`` pairs; the empty tuple is the
constant term. Zero coefficients are never stored, so the zero
polynomial has no terms at all.

Only ring operations are supported (+, -, *); every parametric structure
constant in the catalog is polynomial in its parameters.
"""

from fractions import Fraction
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple, Union

from .rational import RationalLike, format_rational, parse_rational


Monomial = Tuple[Tuple[str, int], ...]


class MissingParameterError(Exception):
    """Custom exception for evaluating a polynomial without all of its parameters."""

    pass


def _normalize_monomial(pairs: Iterable[Tuple[str, int]]) -> Monomial:
    powers: Dict[str, int] = {}
    for name, exponent in pairs:
        if exponent < 0:
            raise ValueError(f"Negative exponent for '{name}'")
        powers[name] = powers.get(name, 0) + exponent
    return tuple(sorted((name, e) for name, e in powers.items() if e > 0))


def _multiply_monomials(left: Monomial, right: Monomial) -> Monomial:
    return _normalize_monomial(left + right)


def _degree(monomial: Monomial) -> int:
    return sum(e for _, e in monomial)


class PolyQ:
    """
    Immutable polynomial over the rationals in named parameters.

    Instances compare equal to plain ints and Fractions when they are
    constant, which keeps grounded structure constants easy to test.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, RationalLike]] = None):
        cleaned: Dict[Monomial, Fraction] = {}
        for monomial, coefficient in (terms or {}).items():
            key = _normalize_monomial(monomial)
            cleaned[key] = cleaned.get(key, Fraction(0)) + parse_rational(coefficient)
        self._terms = MappingProxyType(
            {mono: coeff for mono, coeff in cleaned.items() if coeff != 0}
        )
        self._hash: Optional[int] = None

    @classmethod
    def constant(cls, value: RationalLike) -> "PolyQ":
        """Constant polynomial."""
        return cls({(): value})

    @classmethod
    def variable(cls, name: str) -> "PolyQ":
        """The polynomial consisting of a single parameter."""
        if not name or not (name[0].isalpha() or name[0] == "_"):
            raise ValueError(f"Invalid parameter name: '{name}'")
        return cls({((name, 1),): 1})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(mono == () for mono in self._terms)

    @property
    def constant_value(self) -> Fraction:
        """
        Value of a constant polynomial.

        Raises:
            MissingParameterError: If the polynomial still has parameters
        """
        if not self.is_constant:
            raise MissingParameterError(
                f"Polynomial '{self}' depends on {sorted(self.variables)}"
            )
        return self._terms.get((), Fraction(0))

    @property
    def variables(self) -> FrozenSet[str]:
        return frozenset(name for mono in self._terms for name, _ in mono)

    @property
    def degree(self) -> int:
        if not self._terms:
            return 0
        return max(_degree(mono) for mono in self._terms)

    def evaluate(self, assignment: Mapping[str, RationalLike]) -> Fraction:
        """
        Evaluate exactly at a full parameter assignment.

        Args:
            assignment: Parameter name to rational value

        Returns:
            Fraction: The value

        Raises:
            MissingParameterError: If a parameter of the polynomial is not assigned
        """
        missing = self.variables - set(assignment)
        if missing:
            raise MissingParameterError(
                f"Missing value for parameter(s) {sorted(missing)} in '{self}'"
            )
        return self.substitute(assignment).constant_value

    def substitute(self, assignment: Mapping[str, RationalLike]) -> "PolyQ":
        """Replace the assigned parameters by values; others stay symbolic."""
        values = {name: parse_rational(v) for name, v in assignment.items()}
        result: Dict[Monomial, Fraction] = {}
        for monomial, coefficient in self._terms.items():
            remaining = []
            for name, exponent in monomial:
                if name in values:
                    coefficient = coefficient * values[name] ** exponent
                else:
                    remaining.append((name, exponent))
            key = tuple(remaining)
            result[key] = result.get(key, Fraction(0)) + coefficient
        return PolyQ(result)

    @staticmethod
    def _coerce(other: object) -> Optional["PolyQ"]:
        if isinstance(other, PolyQ):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return PolyQ.constant(other)
        return None

    def __add__(self, other: object) -> "PolyQ":
        right = self._coerce(other)
        if right is None:
            return NotImplemented
        merged: Dict[Monomial, Fraction] = dict(self._terms)
        for mono, coeff in right._terms.items():
            merged[mono] = merged.get(mono, Fraction(0)) + coeff
        return PolyQ(merged)

    __radd__ = __add__

    def __neg__(self) -> "PolyQ":
        return PolyQ({mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: object) -> "PolyQ":
        right = self._coerce(other)
        if right is None:
            return NotImplemented
        return self + (-right)

    def __rsub__(self, other: object) -> "PolyQ":
        left = self._coerce(other)
        if left is None:
            return NotImplemented
        return left - self

    def __mul__(self, other: object) -> "PolyQ":
        right = self._coerce(other)
        if right is None:
            return NotImplemented
        product: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in right._terms.items():
                mono = _multiply_monomials(m1, m2)
                product[mono] = product.get(mono, Fraction(0)) + c1 * c2
        return PolyQ(product)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other: object) -> bool:
        right = self._coerce(other)
        if right is None:
            return NotImplemented
        return dict(self._terms) == dict(right._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        ordered = sorted(self._terms.items(), key=lambda item: (_degree(item[0]), item[0]))
        text = ""
        for index, (monomial, coefficient) in enumerate(ordered):
            term = _format_term(monomial, coefficient)
            if index == 0:
                text = term
            elif term.startswith("-"):
                text += f" - {term[1:]}"
            else:
                text += f" + {term}"
        return text

    def __repr__(self) -> str:
        return f"PolyQ('{self}')"


def _format_term(monomial: Monomial, coefficient: Fraction) -> str:
    if not monomial:
        return format_rational(coefficient)
    factors = "*".join(name for name, exponent in monomial for _ in range(exponent))
    if coefficient == 1:
        return factors
    if coefficient == -1:
        return f"-{factors}"
    return f"{format_rational(coefficient)}*{factors}"


PolyLike = Union[PolyQ, int, Fraction]


def as_poly(value: Union[PolyLike, str]) -> PolyQ:
    """Coerce a number or rational string into a constant PolyQ; PolyQ passes through."""
    if isinstance(value, PolyQ):
        return value
    return PolyQ.constant(parse_rational(value))


def poly_eval(p: PolyQ, assignment: Mapping[str, RationalLike]) -> Fraction:
    """Exact evaluation of ``p`` at ``assignment``."""
    return p.evaluate(assignment)
