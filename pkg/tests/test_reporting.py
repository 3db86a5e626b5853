import csv
import io
import json

import numpy as np
import pytest

from circlepack.configs import validate_config
from circlepack.invariants import Chi2Value
from circlepack.reporting import (
    SporadicReport,
    admissible_mask,
    admissible_residues,
    obstructed_values,
    obstruction_for,
    reports_csv,
    sporadic_figure,
    sporadic_report,
    write_csv,
    write_json,
)


def test_admissible_residues():
    assert admissible_residues("oct", "(0,1,2)") == {0, 1, 2}
    assert admissible_residues("tri", "(3,11)") == {3, 11}
    assert admissible_residues("cube", "(0,2,3)") == {0, 2, 3}
    assert admissible_residues("square", "(3,7)") == {3, 7}
    assert admissible_residues("square", "full") == set(range(8))


def test_admissible_count():
    assert int(admissible_mask("tri", "(1)", 100).sum()) == 9
    assert not admissible_mask("square", "full", 10)[0]


def test_obstructed_values_oct():
    got = obstructed_values("oct", "(2,4,7)", -1, 100)
    shapes = {n * n for n in range(1, 11)} | {2 * n * n for n in range(1, 8)}
    assert got == sorted(v for v in shapes if v % 8 in (2, 4, 7))


def test_obstructed_values_tri():
    assert obstructed_values("tri", "(3,11)", -1, 50) == [3, 27]
    # the shape itself, before the residue filter
    assert list(np.flatnonzero(obstruction_for("tri", "(3,11)", -1).mask(50))) == [3, 12, 27, 48]


@pytest.mark.parametrize("kind,label", [("oct", "(2,4,7)"), ("square", "full"), ("tri", "(1)")])
def test_no_obstruction_for_plus(kind, label):
    assert obstructed_values(kind, label, 1, 1000) == []
    assert obstructed_values(kind, label, Chi2Value(1), 1000) == []


def test_no_obstruction_for_partial_types():
    assert obstruction_for("oct", "(0,3,6)", -1).factors == ()
    assert obstruction_for("cube", "(0,2,3)", None).description == "none"


def test_obstruction_shapes():
    assert obstruction_for("cube", "(0,1,2)", -1).description == "n^2 or 2n^2"
    assert obstruction_for("square", "(1)", -1).description == "n^2"
    assert obstruction_for("tri", "(3,11)", -1).description == "3n^2"
    o = obstruction_for("oct", "(0,1,2)", -1)
    assert 50 in o and 49 in o and 51 not in o


@pytest.fixture(scope="module")
def square_report():
    return sporadic_report(validate_config("square", (-1, 2, 3, 6)), 20000, seed=(-1, 2, 3, 6))


def test_report_consistency(square_report):
    r = square_report
    assert r.sporadic_count == len(r.sporadic)
    assert r.sporadic_max == max(r.sporadic)
    assert r.sporadic == sorted(r.sporadic)
    assert r.type == "full" and r.chi2 == -1 and r.obstruction == "n^2"
    assert r.admissible_count == 20000
    assert r.present_count + r.sporadic_count + sum(1 for n in range(1, 200)
                                                   if n * n <= 20000) == r.admissible_count


def test_restrict_is_prefix(square_report):
    small = sporadic_report(validate_config("square", (-1, 2, 3, 6)), 2000)
    assert square_report.restrict(2000).sporadic == small.sporadic
    with pytest.raises(ValueError):
        square_report.restrict(10 ** 6)


def test_json(square_report, tmp_path):
    d = json.loads(square_report.to_json())
    assert d["sporadic_count"] == len(d["sporadic"]) and d["sporadic_truncated"] is False
    assert d["seed"] == [-1, 2, 3, 6]
    for k in ("kind", "type", "chi2", "obstruction", "N", "admissible_count", "present_count", "sporadic_max"):
        assert k in d
    short = json.loads(square_report.to_json(limit=3))
    assert short["sporadic"] == d["sporadic"][:3] and short["sporadic_truncated"] is True
    path = tmp_path / "r.json"
    write_json(square_report, path)
    assert path.read_text() == square_report.to_json()


def test_csv(square_report, tmp_path):
    rows = list(csv.DictReader(io.StringIO(reports_csv([square_report]))))
    assert rows[0]["seed"] == "-1 2 3 6" and rows[0]["chi2"] == "-1"
    assert int(rows[0]["sporadic_count"]) == square_report.sporadic_count
    path = tmp_path / "r.csv"
    write_csv(square_report, path)
    assert path.read_text() == reports_csv([square_report])


def test_csv_not_applicable():
    r = SporadicReport("tri", (-5, 7, 19), "(7)", None, "none", 10, 1, 1, [])
    row = r.csv_row()
    assert row["chi2"] == "n/a" and row["sporadic_max"] == ""


def test_presence_bound_mismatch():
    from circlepack.enumeration import enumerate_curvatures

    cfg = validate_config("tri", (1, 1, 1))
    with pytest.raises(ValueError):
        sporadic_report(cfg, 100, presence=enumerate_curvatures(cfg, 50))


def test_figure(square_report, tmp_path):
    from circlepack.enumeration import enumerate_curvatures

    p = enumerate_curvatures(validate_config("square", (-1, 2, 3, 6)), 20000)
    out = tmp_path / "fig.png"
    sporadic_figure(square_report, p, out)
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    svg = tmp_path / "fig.svg"
    sporadic_figure(square_report, p, svg)
    assert "<svg" in svg.read_text()
