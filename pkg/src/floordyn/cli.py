"""Command-line front end: ``floordyn {fixed-points,orbit,omega,verify,region-map}``.

Exit codes: 0 success, 1 usage error, 2 verification found a Mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .classifier import OmegaSet, fixed_points, omega, theorem_omega
from .dynamics import (
    BudgetExhaustedError,
    Divergent,
    FixedPoint,
    Point,
    TwoCycle,
    default_budget,
    iterate_orbit,
)
from .numeric import ParseError, classify_lambda, format_rational, parse_rational
from .verifier import GridSpec, combine_text, verify_fixed_points, verify_omega, verify_period2

MIN_STEPS = 8

# options whose values may start with "-" (negative rationals, windows)
_VALUE_OPTIONS = {
    "--lambda", "--lambdas", "--point", "--window", "--step", "--max-steps",
    "--fixed-window", "--resolution", "--out", "--output", "--method", "--format",
}


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _point(text: str) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"point must be 'X,Y', got {text!r}")
    return Point(_rational(parts[0]), _rational(parts[1]))


def _rational_list(text: str) -> List[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _interval(text: str) -> Tuple[Fraction, Fraction]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"interval must be 'LO:HI', got {text!r}")
    lo, hi = _rational(parts[0]), _rational(parts[1])
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"interval needs LO < HI, got {text!r}")
    return lo, hi


def _window2d(text: str) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"window must be 'XLO:XHI,YLO:YHI', got {text!r}")
    return _interval(parts[0]), _interval(parts[1])


def _resolution(text: str) -> Tuple[int, int]:
    try:
        nx, ny = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"resolution must be 'NXxNY', got {text!r}") from None
    if nx < 2 or ny < 2:
        raise argparse.ArgumentTypeError("resolution needs at least 2 samples per axis")
    return nx, ny


def _steps(value: Optional[int], *coords: Fraction) -> int:
    if value is None:
        return default_budget(*coords)
    return max(MIN_STEPS, value)


def _attach_values(argv: Sequence[str]) -> List[str]:
    """Rewrite ``--opt -1/2`` as ``--opt=-1/2`` so argparse accepts leading minus signs."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in _VALUE_OPTIONS and i + 1 < len(argv):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
        else:
            out.append(arg)
            i += 1
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="floordyn", description="Exact dynamics of A(x,y) = (floor(l*y), floor(l*x)).")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("fixed-points", help="list Fix(A) and the parameter regime")
    p.add_argument("--lambda", dest="lam", type=_rational, required=True)

    p = sub.add_parser("orbit", help="print a certified orbit")
    p.add_argument("--lambda", dest="lam", type=_rational, required=True)
    p.add_argument("--point", type=_point, required=True)
    p.add_argument("--max-steps", type=int)
    p.add_argument("--format", choices=("text", "jsonl"), default="text")

    p = sub.add_parser("omega", help="print the omega-limit set of a point")
    p.add_argument("--lambda", dest="lam", type=_rational, required=True)
    p.add_argument("--point", type=_point, required=True)
    p.add_argument("--method", choices=("analytic", "simulate", "theorem"), default="analytic")
    p.add_argument("--max-steps", type=int)

    p = sub.add_parser("verify", help="cross-check simulation, closed form and theorems")
    p.add_argument("--lambdas", type=_rational_list, required=True)
    p.add_argument("--window", type=_interval, required=True)
    p.add_argument("--step", type=_rational, required=True)
    p.add_argument("--fixed-window", type=int, default=100)
    p.add_argument("--max-steps", type=int)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("region-map", help="rasterize omega classes over a window")
    p.add_argument("--lambda", dest="lam", type=_rational, required=True)
    p.add_argument("--window", type=_window2d, required=True)
    p.add_argument("--resolution", type=_resolution, default=(101, 101))
    p.add_argument("--out", choices=("csv", "pgm"), default="csv", help="output format")
    p.add_argument("--output", type=Path, help="output path (default region-map.<format>)")
    return parser


# --- subcommands ------------------------------------------------------------


def _cmd_fixed_points(args, out) -> int:
    print(fixed_points(args.lam), file=out)
    print(f"regime: {classify_lambda(args.lam)}", file=out)
    return 0


def _lattice(p) -> List[str]:
    return [str(p[0]), str(p[1])]


def _verdict_record(verdict) -> Dict[str, object]:
    if isinstance(verdict, FixedPoint):
        return {"verdict": "FixedPoint", "point": _lattice(verdict.point), "entry_step": verdict.entry_step}
    if isinstance(verdict, TwoCycle):
        return {"verdict": "TwoCycle", "p": _lattice(verdict.p), "q": _lattice(verdict.q),
                "entry_step": verdict.entry_step}
    if isinstance(verdict, Divergent):
        return {"verdict": "Divergent", "x_parity": str(verdict.x_parity), "y_parity": str(verdict.y_parity)}
    return {"verdict": "BudgetExhausted"}


def _cmd_orbit(args, out) -> int:
    z = args.point
    trace = iterate_orbit(args.lam, z, _steps(args.max_steps, z.x, z.y))
    rows = [(0, format_rational(z.x), format_rational(z.y))]
    rows += [(j + 1, str(p.x), str(p.y)) for j, p in enumerate(trace.steps)]
    record = _verdict_record(trace.verdict)
    if args.format == "jsonl":
        for step, x, y in rows:
            print(json.dumps({"step": step, "x": x, "y": y}), file=out)
        print(json.dumps(record), file=out)
    else:
        for step, x, y in rows:
            print(f"{step}\t({x},{y})", file=out)
        details = ", ".join(
            f"{k}=({','.join(v)})" if isinstance(v, list) else f"{k}={v}"
            for k, v in record.items() if k != "verdict"
        )
        print(f"verdict: {record['verdict']}" + (f" ({details})" if details else ""), file=out)
    return 0


def _cmd_omega(args, out) -> int:
    z = args.point
    if args.method == "theorem":
        verdict = theorem_omega(args.lam, z)
        if verdict.covered:
            print(f"{verdict.omega} {verdict.case_id}", file=out)
        else:
            print("uncovered", file=out)
        return 0
    steps = _steps(args.max_steps, z.x, z.y) if args.method == "simulate" else None
    print(omega(args.lam, z, args.method, steps), file=out)
    return 0


def _cmd_verify(args, out) -> int:
    lo, hi = args.window
    if args.step <= 0:
        raise UsageError("--step must be positive")
    if args.fixed_window < 1:
        raise UsageError("--fixed-window must be >= 1")
    max_steps = None if args.max_steps is None else max(MIN_STEPS, args.max_steps)
    reports = [verify_omega(GridSpec(tuple(args.lambdas), lo, hi, args.step), max_steps)]
    reports += [verify_fixed_points(lam, args.fixed_window) for lam in args.lambdas]
    if Fraction(-1) in args.lambdas:
        reports.append(verify_period2(args.fixed_window))
    text = combine_text(reports)
    if args.out is not None:
        args.out.write_text(text)
    else:
        out.write(text)
    total = sum(r.mismatches for r in reports)
    print(f"mismatches: {total}", file=out)
    return 2 if total else 0


def assign_class_ids(omega_sets: Iterable[OmegaSet]) -> Dict[OmegaSet, int]:
    """Number the distinct sets by the lexicographic order of their text keys."""
    distinct = {s.key: s for s in omega_sets}
    if not distinct:
        raise ValueError("no omega sets to label")
    return {distinct[k]: i for i, k in enumerate(sorted(distinct))}


def sample_axis(lo: Fraction, hi: Fraction, n: int) -> List[Fraction]:
    return [lo + i * (hi - lo) / (n - 1) for i in range(n)]


def region_map(lam: Fraction, window, resolution) -> Tuple[List[Fraction], List[Fraction], List[List[OmegaSet]]]:
    """Analytic omega set at each exact sample point; ``cells[i][j]`` is at ``(xs[i], ys[j])``."""
    (xlo, xhi), (ylo, yhi) = window
    nx, ny = resolution
    xs, ys = sample_axis(xlo, xhi, nx), sample_axis(ylo, yhi, ny)
    cells = [[omega(lam, (x, y), "analytic") for y in ys] for x in xs]
    return xs, ys, cells


def _legend_path(path: Path) -> Path:
    return path.with_name(path.stem + ".legend.csv")


def _cmd_region_map(args, out) -> int:
    xs, ys, cells = region_map(args.lam, args.window, args.resolution)
    ids = assign_class_ids(s for col in cells for s in col)
    path = args.output or Path(f"region-map.{args.out}")
    legend = _legend_path(path)
    n = len(ids)

    def gray(cid: int) -> int:
        return 0 if n == 1 else round(cid * 255 / (n - 1))

    if args.out == "csv":
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["i", "j", "x", "y", "class_id", "class_key"])
            for i, x in enumerate(xs):
                for j, y in enumerate(ys):
                    s = cells[i][j]
                    w.writerow([i, j, format_rational(x), format_rational(y), ids[s], s.key])
        with legend.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["class_id", "class_key"])
            for s, cid in sorted(ids.items(), key=lambda kv: kv[1]):
                w.writerow([cid, s.key])
    else:
        nx, ny = len(xs), len(ys)
        lines = ["P2", f"# floordyn region map lambda={format_rational(args.lam)}", f"{nx} {ny}", "255"]
        # top row is the largest y
        for j in reversed(range(ny)):
            lines.append(" ".join(str(gray(ids[cells[i][j]])) for i in range(nx)))
        path.write_text("\n".join(lines) + "\n")
        with legend.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["class_id", "gray", "class_key"])
            for s, cid in sorted(ids.items(), key=lambda kv: kv[1]):
                w.writerow([cid, gray(cid), s.key])
    print(f"wrote {path} and {legend} ({n} classes)", file=out)
    return 0


_COMMANDS = {
    "fixed-points": _cmd_fixed_points,
    "orbit": _cmd_orbit,
    "omega": _cmd_omega,
    "verify": _cmd_verify,
    "region-map": _cmd_region_map,
}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_attach_values(argv))
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except BudgetExhaustedError as exc:
        print(f"floordyn: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
