"""Parsing and canonical formatting of exact rationals.

Every number that leaves the library is a string ``"p/q"`` (or ``"p"`` when the
denominator is 1); infinities are written ``"-inf"`` and ``"inf"``.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

from .errors import InvalidRational

Extended = Union[Fraction, float]  # float only ever holds +/-math.inf

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_NEG_INF = {"-inf", "−inf", "-infinity"}
_POS_INF = {"inf", "+inf", "infinity"}


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidRational(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise InvalidRational(f"not a rational string: {value!r}")
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise InvalidRational(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise InvalidRational(f"not a rational: {value!r}")


def as_extended(value) -> Extended:
    """Like :func:`as_rational` but also accepts the infinity sentinels."""
    if isinstance(value, float) and math.isinf(value):
        return value
    if isinstance(value, str) and value.strip().lower() in _NEG_INF | _POS_INF:
        return -math.inf if value.strip().lower() in _NEG_INF else math.inf
    return as_rational(value)


def fmt(value: Extended) -> str:
    if isinstance(value, float):
        if value == math.inf:
            return "inf"
        if value == -math.inf:
            return "-inf"
        raise InvalidRational(f"refusing to serialise float {value!r}")
    return str(Fraction(value))


def is_finite(value: Extended) -> bool:
    return not (isinstance(value, float) and math.isinf(value))
