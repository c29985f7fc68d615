"""Exact rationals are :class:`fractions.Fraction`; this module only fixes
their text form ("p/q", or "p" for integers) used in JSON, CSV and the CLI."""

from __future__ import annotations

from fractions import Fraction


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str | int | Fraction) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = text.strip()
    if text.lower() in ("inf", "infinity", "∞"):
        raise ValueError("infinity is not a rational")
    return Fraction(text)


def format_decimal(x: float, digits: int = 6) -> str:
    return f"{x:.{digits}f}"
