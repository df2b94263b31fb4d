"""Exact rationals.

Scalars are plain :class:`fractions.Fraction` values: already canonical
(lowest terms, positive denominator, sign on the numerator) and immutable.
This module adds the text form used by the input grammar and a size metric
for monitoring coefficient growth during elimination.
"""

import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``p/q`` strings to a Fraction.

    Floats are refused; they would smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign else value


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _bitlen(n: int) -> int:
    # bitlen(0) is 1 so that bit_size is total and monotone
    return max(1, abs(n).bit_length())


def bit_size(value) -> int:
    """Bits of |numerator| plus bits of the denominator.

    >>> bit_size(Fraction(5, 3))
    5
    >>> bit_size(0)
    2
    """
    value = as_rational(value)
    return _bitlen(value.numerator) + _bitlen(value.denominator)
