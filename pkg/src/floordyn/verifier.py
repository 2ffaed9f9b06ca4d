"""Exhaustive cross-checks of the closed-form results against brute force.

Each check returns a :class:`DiscrepancyReport`; reports serialize to a
deterministic tab-separated text form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .classifier import MIXED_CASE, OmegaSet, fixed_points, omega, theorem_cases
from .dynamics import BudgetExhaustedError, LatticePoint, Point, apply_A
from .numeric import MINUS_INF, PLUS_INF, as_rational, format_rational

__all__ = [
    "GridSpec",
    "Entry",
    "DiscrepancyReport",
    "MISMATCH",
    "KNOWN",
    "UNCOVERED",
    "is_known_discrepancy",
    "verify_fixed_points",
    "verify_omega",
    "verify_period2",
]

MISMATCH = "Mismatch"
KNOWN = f"KnownDiscrepancy({MIXED_CASE})"
UNCOVERED = "Uncovered"
TAGS = (MISMATCH, KNOWN, UNCOVERED)

_MIXED_PAIR = OmegaSet.of((PLUS_INF, MINUS_INF), (MINUS_INF, PLUS_INF))


@dataclass(frozen=True)
class GridSpec:
    lambda_values: Tuple[Fraction, ...]
    lo: Fraction
    hi: Fraction
    step: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lambda_values", tuple(as_rational(v) for v in self.lambda_values))
        for name in ("lo", "hi", "step"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if not self.lo < self.hi:
            raise ValueError("grid window needs lo < hi")
        if self.step <= 0:
            raise ValueError("grid step must be positive")

    def axis(self) -> List[Fraction]:
        n = int((self.hi - self.lo) // self.step)
        return [self.lo + i * self.step for i in range(n + 1)]

    def points(self) -> Iterator[Point]:
        axis = self.axis()
        for x in axis:
            for y in axis:
                yield Point(x, y)


class Entry(NamedTuple):
    lam: Fraction
    x: Fraction
    y: Fraction
    source_a: str
    source_b: str
    value_a: str
    value_b: str
    tag: str

    def to_line(self) -> str:
        return "\t".join(
            [format_rational(self.lam), format_rational(self.x), format_rational(self.y),
             self.source_a, self.source_b, self.value_a, self.value_b, self.tag]
        )


@dataclass
class DiscrepancyReport:
    title: str
    entries: List[Entry] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def count(self, tag: str) -> int:
        return sum(1 for e in self.entries if e.tag == tag)

    def summary(self) -> Dict[str, int]:
        out = {tag: self.count(tag) for tag in TAGS}
        out.update(self.stats)
        return out

    @property
    def mismatches(self) -> int:
        return self.count(MISMATCH)

    def bump(self, key: str, by: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + by

    def to_text(self) -> str:
        lines = [f"# report: {self.title}"]
        lines += [f"# note: {n}" for n in self.notes]
        lines.append("# lambda\tx\ty\tsource_a\tsource_b\tvalue_a\tvalue_b\ttag")
        lines += [e.to_line() for e in self.entries]
        lines.append("# summary")
        lines += [f"{k}: {v}" for k, v in self.summary().items()]
        return "\n".join(lines) + "\n"


def is_known_discrepancy(case_id: str, printed: OmegaSet, simulated: OmegaSet) -> bool:
    """The printed mixed-quadrant pair versus a singleton drawn from it."""
    return (
        case_id == MIXED_CASE
        and printed == _MIXED_PAIR
        and len(simulated) == 1
        and simulated.points[0] in printed
    )


def verify_fixed_points(lam, window_radius: int) -> DiscrepancyReport:
    """Brute-force every lattice pair in the window and compare with :func:`fixed_points`."""
    lam = as_rational(lam)
    if window_radius < 1:
        raise ValueError("window_radius must be >= 1")
    p, q = lam.numerator, lam.denominator
    report = DiscrepancyReport(f"fixed points, lambda={format_rational(lam)}, radius={window_radius}")
    report.notes.append("fixed points of A have floor-valued coordinates, so the lattice search is exhaustive")

    r = range(-window_radius, window_radius + 1)
    found = set()
    for x in r:
        for y in r:
            if (p * y) // q == x and (p * x) // q == y:
                found.add(LatticePoint(x, y))
    claimed = set(fixed_points(lam).within(window_radius))

    for pt in sorted(found - claimed):
        report.entries.append(Entry(lam, Fraction(pt.x), Fraction(pt.y), "brute_force", "closed_form",
                                    "fixed", "not fixed", MISMATCH))
    for pt in sorted(claimed - found):
        report.entries.append(Entry(lam, Fraction(pt.x), Fraction(pt.y), "brute_force", "closed_form",
                                    "not fixed", "fixed", MISMATCH))
    report.stats["pairs_checked"] = len(r) ** 2
    report.stats["fixed_points_found"] = len(found)
    return report


def verify_omega(grid: GridSpec, max_steps: Optional[int] = None) -> DiscrepancyReport:
    """Compare simulated, closed-form and printed-theorem omega sets over a grid."""
    report = DiscrepancyReport(
        f"omega, window [{format_rational(grid.lo)},{format_rational(grid.hi)}]^2, "
        f"step {format_rational(grid.step)}"
    )
    report.stats.update(points_checked=0, theorem_agree=0, theorem_overlaps=0, theorem_overlap_conflicts=0)
    axis = grid.axis() if grid.lambda_values else []
    for lam in grid.lambda_values:
        for x in axis:
            for y in axis:
                _check_point(report, lam, Point(x, y), max_steps)
    return report


def _check_point(report: DiscrepancyReport, lam: Fraction, z: Point, max_steps: Optional[int]) -> None:
    report.bump("points_checked")
    add = report.entries.append
    try:
        sim: Optional[OmegaSet] = omega(lam, z, "simulate", max_steps)
    except BudgetExhaustedError:
        sim = None
    ana = omega(lam, z, "analytic")
    if sim != ana:
        add(Entry(lam, z.x, z.y, "simulate", "analytic", "budget" if sim is None else str(sim),
                  str(ana), MISMATCH))
    reference = ana if sim is None else sim

    hits = theorem_cases(lam, z)
    if not hits:
        add(Entry(lam, z.x, z.y, "theorem", "simulate", "uncovered", str(reference), UNCOVERED))
        return
    if len(hits) > 1:
        report.bump("theorem_overlaps")
        if len({h.omega for h in hits}) > 1:
            report.bump("theorem_overlap_conflicts")
    first = hits[0]
    if first.omega == reference:
        report.bump("theorem_agree")
        return
    tag = KNOWN if is_known_discrepancy(first.case_id, first.omega, reference) else MISMATCH
    add(Entry(lam, z.x, z.y, f"theorem:{first.case_id}", "simulate", str(first.omega),
              str(reference), tag))


def verify_period2(window_radius: int) -> DiscrepancyReport:
    """At lambda = -1 every lattice point has A(A(z)) = z, fixed exactly on y = -x."""
    if window_radius < 0:
        raise ValueError("window_radius must be >= 0")
    lam = Fraction(-1)
    report = DiscrepancyReport(f"period two, lambda=-1, radius={window_radius}")
    fixed = 0
    r = range(-window_radius, window_radius + 1)
    for x in r:
        for y in r:
            z = LatticePoint(x, y)
            a = apply_A(lam, z)
            if apply_A(lam, a) != z:
                report.entries.append(Entry(lam, Fraction(x), Fraction(y), "A^2(z)", "z",
                                            f"({a.x},{a.y})", f"({x},{y})", MISMATCH))
            is_fixed = a == z
            fixed += is_fixed
            if is_fixed != (y == -x):
                report.entries.append(Entry(lam, Fraction(x), Fraction(y), "A(z)=z", "y=-x",
                                            str(is_fixed), str(y == -x), MISMATCH))
    report.stats["points_checked"] = len(r) ** 2
    report.stats["fixed_points_found"] = fixed
    return report


def combine_text(reports: Sequence[DiscrepancyReport]) -> str:
    return "".join(r.to_text() for r in reports)
