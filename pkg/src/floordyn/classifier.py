"""Closed-form fixed points and omega-limit sets of A.

Two independent routes produce omega(z):

* :func:`omega` assembles the set from per-coordinate parity limits, either the
  closed-form ones (:func:`parity_limits_analytic`) or simulated ones.
* :func:`theorem_omega` tests the point against the region statements of the
  three limit theorems as printed, including their known slips, and is used
  only as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Tuple

from .dynamics import LatticePoint, ParityLimits, Point, apply_A, parity_limits_simulated
from .numeric import (
    MINUS_INF,
    PLUS_INF,
    ExtInt,
    Regime,
    as_rational,
    classify_lambda,
    floor_scale,
    format_ext,
)

__all__ = [
    "ExtLatticePoint",
    "OmegaSet",
    "FixSet",
    "TheoremVerdict",
    "fixed_intervals",
    "parity_limits_analytic",
    "omega",
    "omega_from_parity",
    "fixed_points",
    "theorem_cases",
    "theorem_omega",
    "MIXED_CASE",
]

MIXED_CASE = "T1.3-mixed"


class ExtLatticePoint(NamedTuple):
    x: ExtInt
    y: ExtInt

    def __str__(self) -> str:
        return f"({format_ext(self.x)},{format_ext(self.y)})"


@dataclass(frozen=True)
class OmegaSet:
    """One or two limit points, deduplicated and sorted (MINUS_INF < n < PLUS_INF)."""

    points: Tuple[ExtLatticePoint, ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("an omega-limit set is never empty")
        canon = tuple(sorted(set(ExtLatticePoint(*p) for p in self.points)))
        object.__setattr__(self, "points", canon)

    @classmethod
    def of(cls, *points) -> "OmegaSet":
        return cls(tuple(points))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, item) -> bool:
        return tuple(item) in self.points

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self.points) + "}"

    @property
    def key(self) -> str:
        return str(self)


@dataclass(frozen=True)
class FixSet:
    """Fixed points of A: a finite sorted list, or one of the two full lattices."""

    kind: str  # "finite" | "diagonal" | "antidiagonal"
    points: Tuple[LatticePoint, ...] = ()

    def contains(self, p) -> bool:
        x, y = p
        if self.kind == "diagonal":
            return x == y
        if self.kind == "antidiagonal":
            return y == -x
        return LatticePoint(x, y) in self.points

    def within(self, radius: int) -> List[LatticePoint]:
        """Members with both coordinates in ``[-radius, radius]``."""
        r = range(-radius, radius + 1)
        if self.kind == "diagonal":
            return [LatticePoint(m, m) for m in r]
        if self.kind == "antidiagonal":
            return sorted(LatticePoint(m, -m) for m in r)
        return [p for p in self.points if abs(p.x) <= radius and abs(p.y) <= radius]

    def __str__(self) -> str:
        if self.kind == "diagonal":
            return "diagonal lattice {(m,m) | m in Z}"
        if self.kind == "antidiagonal":
            return "antidiagonal lattice {(m,-m) | m in Z}"
        return "{" + ",".join(f"({p.x},{p.y})" for p in self.points) + "}"


@dataclass(frozen=True)
class TheoremVerdict:
    omega: Optional[OmegaSet] = None
    case_id: Optional[str] = None

    @property
    def covered(self) -> bool:
        return self.case_id is not None


UNCOVERED = TheoremVerdict()


def fixed_intervals(lam) -> List[Tuple[int, Fraction, Fraction]]:
    """``(k, k/lam, (k+1)/lam)`` for each fixed value k of f whose basin is a band.

    For 0 < lam < 1 these are k = -1..-m and tile ``[-m/lam, 0)``; for lam > 1
    they are k = 0..m-1 and tile ``[0, m/lam)``.  Empty for other regimes.
    """
    lam = as_rational(lam)
    cls = classify_lambda(lam)
    if cls.regime is Regime.POS_SHALLOW:
        ks = range(-1, -cls.m - 1, -1)
    elif cls.regime is Regime.POS_STEEP:
        ks = range(cls.m)
    else:
        return []
    return [(k, Fraction(k) / lam, Fraction(k + 1) / lam) for k in ks]


def parity_limits_analytic(lam, x0) -> ParityLimits:
    """Closed-form parity limits of the f-orbit of ``x0``."""
    lam = as_rational(lam)
    x0 = as_rational(x0)
    cls = classify_lambda(lam)
    regime = cls.regime

    if regime in (Regime.ZERO, Regime.NEG_SHALLOW):
        return ParityLimits(0, 0)
    if regime is Regime.ONE:
        n = math.floor(x0)
        return ParityLimits(n, n)
    if regime is Regime.NEG_ONE:
        n = math.ceil(x0)
        return ParityLimits(n, -n)
    if regime is Regime.NEG_STEEP:
        if 1 / lam < x0 <= 0:
            return ParityLimits(0, 0)
        if x0 > 0:
            return ParityLimits(PLUS_INF, MINUS_INF)
        return ParityLimits(MINUS_INF, PLUS_INF)

    m = cls.m
    if regime is Regime.POS_SHALLOW:
        if x0 >= 0:
            return ParityLimits(0, 0)
        if x0 < -m / lam:
            return ParityLimits(-m, -m)
    else:
        if x0 < 0:
            return ParityLimits(MINUS_INF, MINUS_INF)
        if x0 >= m / lam:
            return ParityLimits(PLUS_INF, PLUS_INF)
    # x0 lies in exactly one fixed interval
    k = floor_scale(lam, x0)
    return ParityLimits(k, k)


def omega_from_parity(px: ParityLimits, py: ParityLimits) -> OmegaSet:
    """Even iterates tend to (e_x, e_y); odd ones to (o_y, o_x) because A swaps."""
    return OmegaSet.of(ExtLatticePoint(px.e, py.e), ExtLatticePoint(py.o, px.o))


def omega(lam, z, method: str = "analytic", max_steps: Optional[int] = None) -> OmegaSet:
    """omega-limit set of ``z`` under A.

    ``method`` is ``"analytic"`` (closed form) or ``"simulate"`` (exact
    simulation; may raise :class:`~floordyn.dynamics.BudgetExhaustedError`).
    """
    lam = as_rational(lam)
    z = Point.of(*z)
    if method == "analytic":
        px = parity_limits_analytic(lam, z.x)
        py = parity_limits_analytic(lam, z.y)
    elif method == "simulate":
        px = parity_limits_simulated(lam, z.x, max_steps)
        py = parity_limits_simulated(lam, z.y, max_steps)
    else:
        raise ValueError(f"unknown method {method!r}")
    return omega_from_parity(px, py)


def fixed_points(lam) -> FixSet:
    lam = as_rational(lam)
    cls = classify_lambda(lam)
    if cls.regime is Regime.NEG_ONE:
        return FixSet("antidiagonal")
    if cls.regime is Regime.ONE:
        return FixSet("diagonal")
    if cls.regime is Regime.POS_SHALLOW:
        xs: Iterable[int] = range(-cls.m, 1)
    elif cls.regime is Regime.POS_STEEP:
        xs = range(cls.m)
    else:
        xs = (0,)
    return FixSet("finite", tuple(LatticePoint(x, x) for x in xs))


# --- theorem statements, transcribed region by region ----------------------


def theorem_cases(lam, z) -> List[TheoremVerdict]:
    """Every printed theorem case whose region contains ``z``, in printed order."""
    lam = as_rational(lam)
    x, y = Point.of(*z)
    cls = classify_lambda(lam)
    regime = cls.regime
    inf, ninf = PLUS_INF, MINUS_INF
    hits: List[TheoremVerdict] = []

    def hit(case_id: str, *points):
        hits.append(TheoremVerdict(OmegaSet.of(*points), case_id))

    if regime is Regime.NEG_SHALLOW:
        hit("T1.1", (0, 0))
    elif regime is Regime.NEG_ONE:
        a = apply_A(lam, (x, y))
        if x.denominator == 1 and y.denominator == 1:
            hit("T1.2", (int(x), int(y)), a)
        else:
            hit("T1.2", a, apply_A(lam, a))
    elif regime is Regime.NEG_STEEP:
        lo = 1 / lam

        def in_box(c):
            return lo < c <= 0

        if in_box(x) and in_box(y):
            hit("T1.3-box", (0, 0))
        # "outside the box" is read coordinatewise; partial box members are uncovered
        elif not in_box(x) and not in_box(y):
            if (x > 0 and y > 0) or (x < 0 and y < 0):
                hit("T1.3", (inf, inf), (ninf, ninf))
            elif (x > 0 and y < 0) or (x < 0 and y > 0):
                hit(MIXED_CASE, (inf, ninf), (ninf, inf))
    elif regime is Regime.POS_SHALLOW:
        m = cls.m
        bands = fixed_intervals(lam)
        below = -m / lam
        corner = (-m + 1) / lam

        if x >= 0 and y >= 0:
            hit("T2.1", (0, 0))
        for k, lo, hi in bands:
            if (lo <= x < hi and y >= 0) or (lo <= y < hi and x >= 0):
                hit("T2.2", (k, 0), (0, k))
        if (x < below and y >= 0) or (y < below and x >= 0):
            hit("T2.3", (-m, 0), (0, -m))
        if x < corner and y < corner:
            hit("T2.4", (-m, -m))
        for k, klo, khi in bands:
            for p, plo, phi in bands:
                if klo <= x < khi and plo <= y < phi:
                    hit("T2.5", (k, p), (p, k))
        for k, lo, hi in bands:
            if (x < corner and lo <= y < hi) or (lo <= x < hi and y < corner):
                hit("T2.6", (k, -m), (-m, k))
    elif regime is Regime.ONE:
        fx, fy = math.floor(x), math.floor(y)
        hit("T3.0", (fx, fy), (fy, fx))
    elif regime is Regime.POS_STEEP:
        m = cls.m
        bands = fixed_intervals(lam)
        top = m / lam

        for k, lo, hi in bands:
            if (lo <= x < hi and y < 0) or (lo <= y < hi and x < 0):
                hit("T3.1", (k, ninf), (ninf, k))
        if (x < 0 and y >= top) or (y < 0 and x >= top):
            hit("T3.2", (inf, ninf), (ninf, inf))
        for k, klo, khi in bands:
            for p, plo, phi in bands:
                if klo <= x < khi and plo <= y < phi:
                    hit("T3.3", (k, p), (p, k))
        for k, lo, hi in bands:
            if (lo <= x < hi and y >= top) or (lo <= y < hi and x >= top):
                hit("T3.4", (k, inf), (inf, k))
        if x < 0 and y < 0:
            hit("T3.5", (ninf, ninf))
        if x >= top and y >= top:
            hit("T3.6", (inf, inf))
    return hits


def theorem_omega(lam, z) -> TheoremVerdict:
    """First printed case containing ``z``, or an uncovered verdict."""
    hits = theorem_cases(lam, z)
    return hits[0] if hits else UNCOVERED
