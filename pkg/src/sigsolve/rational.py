"""Helpers for exact rationals: parsing, rendering, decimal square roots.

All quantities in this package are `fractions.Fraction`; floats never enter
any computation. Decimal output exists purely for human-readable rendering.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction


def parse_rational(token: str) -> Fraction:
    """Parse 'p/q', an integer, or a decimal literal into a Fraction."""
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {token!r}") from exc


def format_rational(value: Fraction) -> str:
    """Canonical 'p/q' (or bare integer) rendering."""
    return str(value)


def format_compact(value: Fraction) -> str:
    """Exact decimal when the denominator is 2^a*5^b, else 'p/q'.

    Mirrors the usual table style: 9/10 prints as 0.9, 29/10 as 2.9.
    """
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return str(value)
    shift = max(twos, fives)
    if shift == 0:
        return str(value.numerator)
    scaled = value.numerator * 10**shift // value.denominator
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(shift + 1, "0")
    return f"{sign}{digits[:-shift]}.{digits[-shift:]}"


def sqrt_decimal(square: Fraction, significant: int = 12) -> str:
    """Decimal rendering of sqrt(square) with the given significant digits."""
    if square < 0:
        raise ValueError("square root of a negative rational")
    if square == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = significant + 20
        root = (Decimal(square.numerator) / Decimal(square.denominator)).sqrt()
    return format(root, f".{significant}g")
