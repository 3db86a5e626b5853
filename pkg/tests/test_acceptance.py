"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import random

import pytest

from circlepack.configs import validate_config
from circlepack.enumeration import oracle_enumerate
from circlepack.ford import check_ford
from circlepack.invariants import chi2_packing
from circlepack.kinds import Family
from circlepack.reporting import obstruction_for, sporadic_report
from circlepack.tables import ROWS
from circlepack.verify import (
    _oct_color_names,
    _shape_hits,
    suite_edge,
    suite_modular,
    suite_node,
    suite_oracle,
)

from conftest import presence

TABLE_ROWS = [
    ("square", (-1, 2, 3, 6), "full", -1, 10 ** 5, 154, 10),
    ("square", (1, 1, 1, 1), "(1)", 1, 10 ** 5, None, 0),
    ("square", (-3, 5, 13, 21), "(5)", None, 10 ** 5, None, 0),
    ("tri", (1, 1, 1), "(1)", 1, 10 ** 5, None, 0),
    ("tri", (-11, 13, 73), "(1)", -1, 10 ** 5, 27157, 45),
    ("tri", (-9, 15, 23), "(3,11)", -1, 10 ** 5, 15275, 39),
    ("cube", (-1, 2, 3, 4, 6, 7, 8, 11), "(0,2,3)", None, 10 ** 6, 312, 7),
    ("oct", (-1, 2, 2, 4, 4, 7), "(2,4,7)", 1, 10 ** 6, 34716, 31),
    ("oct", (-2, 3, 6, 8, 11, 16), "(0,3,6)", None, 10 ** 6, 116523, 125),
]
DESK_N = 10 ** 6


def _report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE {n} {'PASS' if ok else 'FAIL'}: {detail}")


def _sporadic(kind, seed, N, threads=1):
    cfg = validate_config(kind, seed)
    return sporadic_report(cfg, N, seed=seed, presence=presence(kind, seed, N, threads))


def test_criterion_1_table_rows(capsys):
    bad = []
    for kind, seed, label, chi, N, mx, cnt in TABLE_ROWS:
        r = _sporadic(kind, seed, N)
        got = (r.type, r.chi2, r.sporadic_max, r.sporadic_count)
        if got != (label, chi, mx, cnt):
            bad.append(f"{kind}{list(seed)} got max {r.sporadic_max} count {r.sporadic_count}, "
                       f"table max {mx} count {cnt}")
    _report(capsys, 1, not bad, f"{len(TABLE_ROWS) - len(bad)}/{len(TABLE_ROWS)} rows match"
            + ("; " + "; ".join(bad) if bad else ""))
    assert not bad


def test_criterion_2_chi2_column(capsys):
    bad = []
    rows = [r for r in ROWS if r.chi2 is not None]
    for r in rows:
        got = chi2_packing(validate_config(r.family.value, r.seed), samples=64).value
        if got != r.chi2:
            bad.append((r.family.value, r.seed, got, r.chi2))
    _report(capsys, 2, not bad, f"{len(rows) - len(bad)}/{len(rows)} chi2 values match")
    assert not bad


def test_criterion_3_obstructions(capsys):
    bad, checked = [], 0
    for r in ROWS:
        if r.chi2 != -1:
            continue
        obs = obstruction_for(r.family.value, r.type_label, r.chi2)
        N = min(r.N, DESK_N)
        p = presence(r.family.value, r.seed, N)
        hits = _shape_hits(p.values(), obs.factors)
        checked += p.count
        if not obs.factors or hits:
            bad.append((r.family.value, r.seed, hits[:5]))
    # the octahedral partial types, circle by colour
    from circlepack.enumeration import enumerate_curvatures

    for r in ROWS:
        if r.family is not Family.OCT or r.chi2 is not None:
            continue
        cfg = validate_config("oct", r.seed)
        N = min(r.N, DESK_N)
        p = enumerate_curvatures(cfg, N, colors=True)
        for color, name in _oct_color_names(cfg).items():
            factor = {"blue": (1,), "red": (2,)}.get(name)
            if factor:
                hits = _shape_hits(p.color_values(color), factor)
                checked += len(p.color_values(color))
                if hits:
                    bad.append(("oct", r.seed, name, hits[:5]))
    _report(capsys, 3, not bad, f"{checked} curvatures checked, {len(bad)} packings with obstructed values")
    assert not bad


def test_criterion_4_oracle(capsys):
    res = suite_oracle(N=2000)
    # the oracle itself has settled: larger caps and windows add nothing
    stable = []
    for kind, seed in [("oct", (-2, 4, 5, 5, 6, 12)), ("cube", (-2, 5, 5, 6, 12, 13, 13, 20)),
                       ("square", (-27, 37, 173, 237)), ("tri", (-11, 13, 73))]:
        cfg = validate_config(kind, seed)
        wide = oracle_enumerate(cfg, 2000, cap=16000, radius=4)
        stable.append(wide == oracle_enumerate(cfg, 2000))
    ok = res.ok and all(stable)
    _report(capsys, 4, ok, f"{res.checked - len(res.failures)}/{res.checked} seeds equal the oracle at N=2000, "
            f"oracle stable on {sum(stable)}/{len(stable)} wider runs")
    assert ok, res.failures


def test_criterion_5_ford(capsys):
    reps = [check_ford(f, 20) for f in Family]
    ok = all(r.ok for r in reps)
    _report(capsys, 5, ok, ", ".join(f"{r.family.value} {r.checked} checks" for r in reps))
    assert ok


def test_criterion_6_well_defined(capsys):
    node = suite_node(witnesses=20, rng=random.Random(0))
    edge = suite_edge(pairs=10 ** 4, rng=random.Random(0))
    flips = node.details["form_pairs"]
    enough = all(v >= 10 ** 4 for v in edge.details["pairs"].values())
    ok = node.ok and edge.ok and enough and flips["flip"] > 0
    _report(capsys, 6, ok, f"{edge.checked} pair checks (min {min(edge.details['pairs'].values())} per packing), "
            f"{node.checked} circle checks, {flips['flip']} flipped and {flips['agree']} agreeing form pairs")
    assert ok, (node.failures, edge.failures)


def test_criterion_7_modular(capsys):
    res = suite_modular(moves=10 ** 5, N=2000, rng=random.Random(0))
    _report(capsys, 7, res.ok, f"{len(Family)} x 100000 moves and all enumerated pair sums, "
            f"{res.details.get('failure_count', 0)} failures")
    assert res.ok, res.failures


def test_criterion_8_determinism(capsys):
    bad = []
    for kind, seed, _, _, N, _, _ in TABLE_ROWS:
        one = _sporadic(kind, seed, N, threads=1).to_json()
        eight = _sporadic(kind, seed, N, threads=8).to_json()
        if one.encode() != eight.encode():
            bad.append((kind, seed))
    _report(capsys, 8, not bad, f"{len(TABLE_ROWS) - len(bad)}/{len(TABLE_ROWS)} reports byte-identical at 1 and 8 threads")
    assert not bad
