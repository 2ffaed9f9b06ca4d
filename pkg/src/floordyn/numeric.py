"""Exact rationals, extended integers and the parameter regimes of the floor map.

Rationals are :class:`fractions.Fraction` values (always canonical, positive
denominator).  Extended integers are plain ``int`` for finite values and the
float infinities :data:`PLUS_INF` / :data:`MINUS_INF`, which gives the total
order ``MINUS_INF < n < PLUS_INF`` for free.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Rational = Fraction
ExtInt = Union[int, float]

PLUS_INF: float = math.inf
MINUS_INF: float = -math.inf

__all__ = [
    "Rational",
    "ExtInt",
    "PLUS_INF",
    "MINUS_INF",
    "Regime",
    "ParamClass",
    "ParseError",
    "as_rational",
    "floor_scale",
    "classify_lambda",
    "scan_index",
    "closed_form_index",
    "parse_rational",
    "format_rational",
    "format_ext",
    "is_integral",
]


class Regime(enum.Enum):
    NEG_STEEP = "NegSteep"  # lambda < -1
    NEG_ONE = "NegOne"  # lambda == -1
    NEG_SHALLOW = "NegShallow"  # -1 < lambda < 0
    ZERO = "Zero"
    POS_SHALLOW = "PosShallow"  # 0 < lambda < 1, carries m
    ONE = "One"
    POS_STEEP = "PosSteep"  # lambda > 1, carries m


@dataclass(frozen=True)
class ParamClass:
    """Regime of the parameter, with its index ``m`` for the shallow/steep
    positive regimes and ``None`` otherwise."""

    regime: Regime
    m: Optional[int] = None

    def __str__(self) -> str:
        if self.m is None:
            return self.regime.value
        return f"{self.regime.value}(m={self.m})"


class ParseError(ValueError):
    """Malformed rational literal; ``position`` is the offending character index."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


def as_rational(value) -> Fraction:
    """Coerce int/Fraction/str to an exact Fraction.

    Floats are converted losslessly (their exact binary value).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, float)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def is_integral(x: Fraction) -> bool:
    return x.denominator == 1


def floor_scale(lam: Fraction, x: Fraction) -> int:
    """Return ``floor(lam * x)`` exactly, via floored division of the integer product."""
    return (lam.numerator * x.numerator) // (lam.denominator * x.denominator)


def _pos_shallow_holds(lam: Fraction, m: int) -> bool:
    return Fraction(m - 1, m) < lam <= Fraction(m, m + 1)


def _pos_steep_holds(lam: Fraction, m: int) -> bool:
    if lam < Fraction(m + 1, m):
        return False
    return m == 1 or lam < Fraction(m, m - 1)


def scan_index(lam: Fraction) -> int:
    """Find the bracketing index of ``lam`` by linear scan over m = 1, 2, ...

    Only defined for ``0 < lam < 1`` or ``lam > 1``.  The scan stops by
    ``ceil(1/|1 - lam|) + 1``; reaching that bound is a bug.
    """
    lam = as_rational(lam)
    if lam <= 0 or lam == 1:
        raise ValueError(f"no bracketing index for lambda={lam}")
    holds = _pos_shallow_holds if lam < 1 else _pos_steep_holds
    bound = math.ceil(1 / abs(1 - lam)) + 1
    for m in range(1, bound + 1):
        if holds(lam, m):
            return m
    raise AssertionError(f"index scan for lambda={lam} passed its bound {bound}")


def closed_form_index(lam: Fraction) -> int:
    """Bracketing index from the ceiling formulas (accelerator for :func:`scan_index`)."""
    lam = as_rational(lam)
    if 0 < lam < 1:
        return max(1, math.ceil(lam / (1 - lam)))
    if lam > 1:
        return math.ceil(1 / (lam - 1))
    raise ValueError(f"no bracketing index for lambda={lam}")


def classify_lambda(lam) -> ParamClass:
    """Return the regime of ``lam``.

    >>> classify_lambda(Fraction(3, 4))
    ParamClass(regime=<Regime.POS_SHALLOW: 'PosShallow'>, m=3)
    """
    lam = as_rational(lam)
    if lam < -1:
        return ParamClass(Regime.NEG_STEEP)
    if lam == -1:
        return ParamClass(Regime.NEG_ONE)
    if lam < 0:
        return ParamClass(Regime.NEG_SHALLOW)
    if lam == 0:
        return ParamClass(Regime.ZERO)
    if lam == 1:
        return ParamClass(Regime.ONE)
    m = closed_form_index(lam)
    holds = _pos_shallow_holds if lam < 1 else _pos_steep_holds
    if not holds(lam, m):
        m = scan_index(lam)
    return ParamClass(Regime.POS_SHALLOW if lam < 1 else Regime.POS_STEEP, m)


_MINUS_SIGNS = "-−"
_RATIO = re.compile(r"([+\-−]?)(\d+)(?:/(\d+)|\.(\d+))?")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer, or a finite decimal into an exact Fraction.

    >>> parse_rational("-0.25")
    Fraction(-1, 4)
    >>> parse_rational("7.3")
    Fraction(73, 10)
    """
    if not isinstance(text, str):
        raise TypeError("parse_rational expects a string")
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    if not s:
        raise ParseError("empty rational literal", text, offset)
    match = _RATIO.match(s)
    if match is None or match.end() == 0:
        raise ParseError("expected a digit or sign", text, offset)
    if match.end() != len(s):
        pos = match.end()
        if s[pos] in "/.":
            raise ParseError("expected digits", text, offset + pos + 1)
        raise ParseError("unexpected character", text, offset + pos)
    sign, whole, den, frac = match.groups()
    negative = sign in _MINUS_SIGNS and sign != ""
    if den is not None:
        if int(den) == 0:
            raise ParseError("zero denominator", text, offset + s.index("/") + 1)
        value = Fraction(int(whole), int(den))
    elif frac is not None:
        value = Fraction(int(whole + frac), 10 ** len(frac))
    else:
        value = Fraction(int(whole))
    return -value if negative else value


def format_rational(x: Fraction) -> str:
    """``"p/q"``, or ``"n"`` for integers (round-trips through :func:`parse_rational`)."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_ext(v: ExtInt) -> str:
    if v == PLUS_INF:
        return "+inf"
    if v == MINUS_INF:
        return "-inf"
    return str(int(v))
