import csv
import io
import json
from fractions import Fraction as F

import pytest

from floordyn.classifier import OmegaSet, omega
from floordyn.cli import assign_class_ids, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_omega_command():
    assert call("omega", "--lambda", "1/2", "--point", "-3/2,3") == (0, "{(-1,0),(0,-1)}\n")


def test_omega_simulate_and_theorem():
    assert call("omega", "--lambda", "-2", "--point", "1,-1", "--method", "simulate")[1] == "{(+inf,-inf)}\n"
    assert call("omega", "--lambda", "-2", "--point", "1,-1", "--method", "theorem")[1] == (
        "{(-inf,+inf),(+inf,-inf)} T1.3-mixed\n"
    )
    assert call("omega", "--lambda", "-2", "--point", "0,5", "--method", "theorem")[1] == "uncovered\n"


def test_fixed_points_command():
    code, text = call("fixed-points", "--lambda", "-1")
    assert code == 0
    assert text.splitlines() == ["antidiagonal lattice {(m,-m) | m in Z}", "regime: NegOne"]
    assert call("fixed-points", "--lambda", "3/4")[1].splitlines()[1] == "regime: PosShallow(m=3)"


def test_orbit_jsonl():
    code, text = call("orbit", "--lambda", "-1/2", "--point", "7.3,-4", "--format", "jsonl")
    assert code == 0
    rows = [json.loads(line) for line in text.splitlines()]
    assert rows[0] == {"step": 0, "x": "73/10", "y": "-4"}
    assert [(r["x"], r["y"]) for r in rows[1:-1]] == [("2", "-4"), ("2", "-1"), ("0", "-1"), ("0", "0")]
    assert rows[-1] == {"verdict": "FixedPoint", "point": ["0", "0"], "entry_step": 4}


def test_orbit_text():
    code, text = call("orbit", "--lambda", "-1", "--point", "2.3,1")
    assert text.splitlines()[-1] == "verdict: TwoCycle (p=(-1,-3), q=(3,1), entry_step=1)"


def test_verify_command_passes(tmp_path):
    code, _ = call("verify", "--lambdas", "1/2,3/4", "--window", "-5:5", "--step", "1/4", "--fixed-window", "20")
    assert code == 0
    out = tmp_path / "report.txt"
    code, text = call("verify", "--lambdas", "-1,-2", "--window", "-2:2", "--step", "1/2",
                      "--fixed-window", "5", "--out", str(out))
    assert code == 0
    report = out.read_text()
    assert "# report: period two" in report
    assert "KnownDiscrepancy(T1.3-mixed)" in report
    assert text == "mismatches: 0\n"


def test_verify_command_exit_two_on_mismatch(monkeypatch):
    from floordyn import verifier

    real = verifier.omega

    def broken(lam, z, method="analytic", max_steps=None):
        if method == "analytic":
            return OmegaSet.of((7, 7))
        return real(lam, z, method, max_steps)

    monkeypatch.setattr(verifier, "omega", broken)
    code, _ = call("verify", "--lambdas", "1/2", "--window", "0:1", "--step", "1", "--fixed-window", "2")
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["omega", "--lambda", "3/0", "--point", "1,1"],
        ["omega", "--lambda", "1", "--point", "1"],
        ["bogus"],
        ["region-map", "--lambda", "1", "--window", "1:0,0:1"],
        ["region-map", "--lambda", "1", "--window", "0:1,0:1", "--resolution", "1x5"],
    ],
)
def test_usage_errors_exit_one(argv):
    assert call(*argv)[0] == 1


def test_assign_class_ids():
    zero, minus = OmegaSet.of((0, 0)), OmegaSet.of((-1, -1))
    assert assign_class_ids([zero]) == {zero: 0}
    assert assign_class_ids([zero, minus, zero]) == {minus: 0, zero: 1}
    with pytest.raises(ValueError):
        assign_class_ids([])


def _region(tmp_path, name, fmt="csv", res="21x21", window="-6:1,-6:1", lam="3/4"):
    path = tmp_path / name
    code, _ = call("region-map", "--lambda", lam, "--window", window, "--resolution", res,
                   "--out", fmt, "--output", str(path))
    assert code == 0
    return path, path.with_name(path.stem + ".legend.csv")


def test_region_map_csv_matches_classifier(tmp_path):
    path, legend = _region(tmp_path, "map.csv")
    with path.open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 21 * 21
    ids = {row["class_key"]: int(row["class_id"]) for row in rows}
    with legend.open() as fh:
        assert {r["class_key"]: int(r["class_id"]) for r in csv.DictReader(fh)} == ids
    for row in rows[::17]:
        expected = omega(F(3, 4), (F(row["x"]), F(row["y"])))
        assert row["class_key"] == expected.key
    # sample points are exact: i=0 is the window corner, i=20 the far edge
    assert (rows[0]["x"], rows[-1]["x"]) == ("-6", "1")


def test_region_map_pgm(tmp_path):
    path, legend = _region(tmp_path, "map.pgm", fmt="pgm", res="9x7")
    tokens = [t for line in path.read_text().splitlines() if not line.startswith("#") for t in line.split()]
    assert tokens[:4] == ["P2", "9", "7", "255"]
    pixels = [int(t) for t in tokens[4:]]
    assert len(pixels) == 63 and all(0 <= p <= 255 for p in pixels)
    with legend.open() as fh:
        grays = {int(r["gray"]) for r in csv.DictReader(fh)}
    assert set(pixels) <= grays


def test_region_map_is_deterministic(tmp_path):
    a, la = _region(tmp_path, "a.csv")
    b, lb = _region(tmp_path, "b.csv")
    assert a.read_bytes() == b.read_bytes()
    assert la.read_bytes() == lb.read_bytes()
