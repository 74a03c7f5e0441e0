"""Number handling for the two instance modes.

An instance is either fully ``"rational"`` (every probability, value, cost
and budget is an exact :class:`fractions.Fraction` or ``int``) or fully
``"float"``.  Mixing the two is rejected at construction time.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Number = Union[int, float, Fraction]

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)


class ModeError(ValueError):
    pass


def infer_mode(values: Iterable[Number]) -> str:
    for v in values:
        if isinstance(v, float):
            return FLOAT
    return RATIONAL


def coerce(value, mode: str) -> Number:
    """Convert ``value`` to the representation used by ``mode``.

    Strings ``"p/q"`` are accepted in both modes.  A Python ``float`` in
    rational mode, or a non-integral Fraction in float mode, is a mode mix.
    """
    if isinstance(value, bool):
        raise TypeError(f"boolean is not a number: {value!r}")
    if isinstance(value, str):
        value = parse_fraction(value)
        return value if mode == RATIONAL else float(value)
    if mode == RATIONAL:
        if isinstance(value, float):
            raise ModeError(f"float {value!r} in a rational-mode instance")
        if isinstance(value, Rational):
            return Fraction(value)
        raise TypeError(f"not a number: {value!r}")
    if mode == FLOAT:
        if isinstance(value, Fraction) and value.denominator != 1:
            raise ModeError(f"rational {value} in a float-mode instance")
        if isinstance(value, (int, float, Fraction)):
            return float(value)
        raise TypeError(f"not a number: {value!r}")
    raise ModeError(f"unknown mode {mode!r}")


def parse_fraction(text: str) -> Fraction:
    parts = text.strip().split("/")
    if len(parts) == 1:
        return Fraction(int(parts[0]))
    if len(parts) != 2:
        raise ValueError(f"bad rational literal {text!r}")
    p, q = int(parts[0]), int(parts[1])
    if q <= 0:
        raise ValueError(f"rational literal {text!r} needs a positive denominator")
    return Fraction(p, q)


def to_json(value: Number):
    """JSON representation: ints stay ints, non-integral rationals become "p/q"."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return value
    return int(value)


def fmt(value: Number) -> str:
    v = to_json(value)
    return repr(v) if isinstance(v, float) else str(v)


def zero(mode: str) -> Number:
    return Fraction(0) if mode == RATIONAL else 0.0


def one(mode: str) -> Number:
    return Fraction(1) if mode == RATIONAL else 1.0


def prod_complement(probs: Iterable[Number], mode: str) -> Number:
    """Product of ``1 - p`` over ``probs``.

    Float mode switches to log space once any factor drops below 1e-8.
    """
    if mode == RATIONAL:
        acc = Fraction(1)
        for p in probs:
            if p:
                acc *= 1 - p
                if not acc:
                    break
        return acc
    factors = [1.0 - p for p in probs if p]
    if not factors:
        return 1.0
    if min(factors) <= 0.0:
        return 0.0
    if min(factors) < 1e-8:
        return math.exp(math.fsum(math.log(f) for f in factors))
    return math.prod(factors)
