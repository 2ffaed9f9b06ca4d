"""The maps f(x) = floor(lam*x) and A(x, y) = (f(y), f(x)), with certified orbits.

Every orbit of A becomes a lattice orbit after one step, and every regime ends
in a fixed point, a 2-cycle, or a monotone escape to infinity.  Stopping rules
below certify each of those outcomes in finite time, so no long history is kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional, Union

from .numeric import (
    MINUS_INF,
    PLUS_INF,
    ExtInt,
    ParamClass,
    Regime,
    as_rational,
    classify_lambda,
    floor_scale,
    format_ext,
)

__all__ = [
    "Point",
    "LatticePoint",
    "ParityLimits",
    "FixedPoint",
    "TwoCycle",
    "Divergent",
    "BudgetExhausted",
    "OrbitTrace",
    "BudgetExhaustedError",
    "apply_f",
    "apply_A",
    "default_budget",
    "iterate_orbit",
    "parity_limits_simulated",
]


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(as_rational(x), as_rational(y))


class LatticePoint(NamedTuple):
    x: int
    y: int


class ParityLimits(NamedTuple):
    """Limits of the even-indexed (``e``) and odd-indexed (``o``) iterates of f."""

    e: ExtInt
    o: ExtInt

    @property
    def finite(self) -> bool:
        return self.e not in (PLUS_INF, MINUS_INF) and self.o not in (PLUS_INF, MINUS_INF)

    def __str__(self) -> str:
        return f"({format_ext(self.e)},{format_ext(self.o)})"


@dataclass(frozen=True)
class FixedPoint:
    point: LatticePoint
    entry_step: int


@dataclass(frozen=True)
class TwoCycle:
    p: LatticePoint
    q: LatticePoint
    entry_step: int


@dataclass(frozen=True)
class Divergent:
    x_parity: ParityLimits
    y_parity: ParityLimits


@dataclass(frozen=True)
class BudgetExhausted:
    pass


TerminalVerdict = Union[FixedPoint, TwoCycle, Divergent, BudgetExhausted]


@dataclass
class OrbitTrace:
    start: Point
    steps: List[LatticePoint] = field(default_factory=list)
    verdict: TerminalVerdict = field(default_factory=BudgetExhausted)

    @property
    def steps_used(self) -> int:
        return len(self.steps)


class BudgetExhaustedError(RuntimeError):
    """Raised when a 1-D orbit is not certified within its step budget.

    ``orbit`` holds the simulated prefix, starting with the initial value.
    """

    def __init__(self, lam: Fraction, orbit: list, max_steps: int):
        super().__init__(
            f"orbit of {orbit[0]} under lambda={lam} not certified after {max_steps} steps"
        )
        self.lam = lam
        self.orbit = orbit
        self.max_steps = max_steps


def apply_f(lam, x) -> int:
    return floor_scale(as_rational(lam), as_rational(x))


def apply_A(lam, z) -> LatticePoint:
    """One step of A; note the coordinate swap: ``(f(y), f(x))``."""
    lam = as_rational(lam)
    x, y = z
    return LatticePoint(floor_scale(lam, as_rational(y)), floor_scale(lam, as_rational(x)))


def default_budget(*values) -> int:
    """64 plus the largest bit length among numerators/denominators of ``values``."""
    bits = 0
    for v in values:
        v = as_rational(v)
        bits = max(bits, abs(v.numerator).bit_length(), v.denominator.bit_length())
    return 64 + bits


def _f_int(p: int, q: int, n: int) -> int:
    return (p * n) // q


def _certify(cls: ParamClass, p: int, q: int, value: int, step: int) -> Optional[ParityLimits]:
    """Certified parity limits for an f-orbit sitting at integer ``value`` at ``step``.

    Parity is relative to the original step 0.  Returns None when the orbit's
    fate is not yet decided.
    """
    nxt = _f_int(p, q, value)
    if nxt == value:
        return ParityLimits(value, value)
    if _f_int(p, q, nxt) == value:
        even, odd = (value, nxt) if step % 2 == 0 else (nxt, value)
        return ParityLimits(even, odd)
    if cls.regime is Regime.POS_STEEP:
        # floor(lam*n) >= n+1 for n >= m, floor(lam*n) <= n-1 for n <= -1
        if value >= cls.m:
            return ParityLimits(PLUS_INF, PLUS_INF)
        if value <= -1:
            return ParityLimits(MINUS_INF, MINUS_INF)
    elif cls.regime is Regime.NEG_STEEP and value != 0:
        # sign alternates, magnitude grows every two steps
        positive_on_even = (value > 0) == (step % 2 == 0)
        if positive_on_even:
            return ParityLimits(PLUS_INF, MINUS_INF)
        return ParityLimits(MINUS_INF, PLUS_INF)
    return None


def parity_limits_simulated(lam, x0, max_steps: Optional[int] = None) -> ParityLimits:
    """Even/odd limits of the f-orbit of ``x0``, found by exact simulation.

    Raises BudgetExhaustedError if no stopping rule fires within ``max_steps``
    applications of f (default: :func:`default_budget`).
    """
    lam = as_rational(lam)
    x0 = as_rational(x0)
    if max_steps is None:
        max_steps = default_budget(x0)
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    cls = classify_lambda(lam)
    p, q = lam.numerator, lam.denominator

    orbit: list = [x0]
    if x0.denominator == 1:
        found = _certify(cls, p, q, x0.numerator, 0)
        if found is not None:
            return found
    value = floor_scale(lam, x0)
    for step in range(1, max_steps + 1):
        if step > 1:
            value = _f_int(p, q, value)
        orbit.append(value)
        found = _certify(cls, p, q, value, step)
        if found is not None:
            return found
    raise BudgetExhaustedError(lam, orbit, max_steps)


def iterate_orbit(lam, z, max_steps: Optional[int] = None) -> OrbitTrace:
    """Iterate A from ``z`` until a fixed point, 2-cycle or divergence is certified.

    ``trace.steps[j]`` is ``A^(j+1)(z)``.  A FixedPoint/TwoCycle verdict reports
    the first step at which the orbit is on its cycle; the trace ends there.
    Running out of steps yields a BudgetExhausted verdict, not an error.
    """
    lam = as_rational(lam)
    start = Point.of(*z)
    if max_steps is None:
        max_steps = default_budget(start.x, start.y)
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    cls = classify_lambda(lam)
    p, q = lam.numerator, lam.denominator
    trace = OrbitTrace(start)

    def settle(point: LatticePoint, step: int):
        # coordinates of A^step(z) are f^step of (x0, y0), swapped on odd steps
        u, v = (point.x, point.y) if step % 2 == 0 else (point.y, point.x)
        cu = _certify(cls, p, q, u, step)
        if cu is None:
            return None
        cv = _certify(cls, p, q, v, step)
        if cv is None:
            return None
        if not (cu.finite and cv.finite):
            return Divergent(cu, cv)
        image = apply_A(lam, point)
        if image == point:
            return FixedPoint(point, step)
        return TwoCycle(point, image, step)

    if start.x.denominator == 1 and start.y.denominator == 1:
        verdict = settle(LatticePoint(start.x.numerator, start.y.numerator), 0)
        if verdict is not None:
            trace.verdict = verdict
            return trace

    current = apply_A(lam, start)
    for step in range(1, max_steps + 1):
        if step > 1:
            current = LatticePoint(_f_int(p, q, current.y), _f_int(p, q, current.x))
        trace.steps.append(current)
        verdict = settle(current, step)
        if verdict is not None:
            trace.verdict = verdict
            return trace
    trace.verdict = BudgetExhausted()
    return trace
