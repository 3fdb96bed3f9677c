"""Exact rational scalars.

Every coefficient in the package is a :data:`Q`, which is ``gmpy2.mpq``.  It
compares and hashes like :class:`fractions.Fraction`, so Fractions supplied by
callers mix freely with package output, at roughly a tenth of the cost.
"""

from __future__ import annotations

import numbers
import re
from fractions import Fraction
from typing import Union

import gmpy2

Q = gmpy2.mpq

RationalLike = Union[int, str, Fraction, "gmpy2.mpq"]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(value: RationalLike) -> Q:
    """Convert ``value`` to :data:`Q`, accepting ``"p/q"`` and integer strings.

    Floats are rejected on purpose: nothing in the package is allowed to round.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, numbers.Rational):
        return Q(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if match is None:
            raise ValueError(f"not a rational literal: {value!r}")
        num, den = match.groups()
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Q(int(num), int(den) if den else 1)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def is_rational(value: object) -> bool:
    """True for ints, Fractions and mpq values, never for bools or floats."""
    if isinstance(value, bool):
        return False
    return isinstance(value, numbers.Rational)


def format_rational(value: RationalLike) -> str:
    value = parse_rational(value)
    num, den = int(value.numerator), int(value.denominator)
    if den == 1:
        return str(num)
    return f"{num}/{den}"
