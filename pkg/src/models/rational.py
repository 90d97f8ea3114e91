"""
Rational scalar helpers.

All exact values in the package are ``fractions.Fraction`` instances.
This module fixes their text form (``p/q`` or ``p``) and provides an
annotated pydantic field type so result models serialize rationals as
strings and read them back unchanged.
"""

import re
from fractions import Fraction
from typing import Annotated, Union

from pydantic import PlainSerializer, PlainValidator


_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

RationalLike = Union[Fraction, int, str]


class RationalParsingError(ValueError):
    """Custom exception for malformed rational text."""

    pass


def parse_rational(value: RationalLike) -> Fraction:
    """
    Convert an int, Fraction or ``p/q`` string into a reduced Fraction.

    Args:
        value: Value to convert

    Returns:
        Fraction: The exact value

    Raises:
        RationalParsingError: If the text is not a rational literal or the
            denominator is zero
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise RationalParsingError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise RationalParsingError(f"Not a rational: {value!r}")

    match = _RATIONAL_PATTERN.match(value)
    if not match:
        raise RationalParsingError(f"Not a rational literal: '{value}'")

    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise RationalParsingError(f"Zero denominator in '{value}'")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Render a rational as ``p/q``, or ``p`` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _validate_rational(value: object) -> Fraction:
    try:
        return parse_rational(value)  # type: ignore[arg-type]
    except RationalParsingError as e:
        raise ValueError(str(e)) from e


Rational = Annotated[
    Fraction,
    PlainValidator(_validate_rational),
    PlainSerializer(format_rational, return_type=str),
]
