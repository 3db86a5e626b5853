import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circlepack.arith import kronecker
from circlepack.configs import apply_generator, generator_ids, modular_type, validate_config
from circlepack.forms import QuadForm, tangent_forms
from circlepack.invariants import (
    CIRCLE_TYPES,
    PACKING_TYPES,
    NotApplicable,
    arrow_classes,
    chi2_circle,
    chi2_from_rho,
    chi2_packing,
    find_rho,
    form_symbol_constancy,
    oct_partial_colors,
    partial_symbol,
    random_states,
    rho_witnesses,
    tangent_coprime_pairs,
)
from circlepack.kinds import Family
from circlepack.tables import ROWS


def _row_id(r):
    return f"{r.family.value}{list(r.seed)}"


def test_oct_examples():
    assert chi2_from_rho(Family.OCT, "(0,1,2)", 17, 11) == -1
    assert chi2_from_rho(Family.OCT, "(2,4,7)", 7, 9) == 1
    assert chi2_from_rho(Family.OCT, "(0,1,2)", 2, 9) == 1


def test_oct_seventeen_any_witness():
    cfg = validate_config("oct", (-6, 10, 17, 17, 24, 40))
    for i in cfg.circle_ids():
        if cfg.values[i] == 17:
            assert chi2_circle(cfg, i) == -1
            # rho = 17 + (-6) from the tangent line-like circle
            assert chi2_from_rho(Family.OCT, "(0,1,2)", 17, 17 - 6) == -1


def test_neighbor_sum_is_witness():
    cfg = validate_config("oct", (-1, 2, 2, 4, 4, 7))
    i = cfg.values.index(7)
    w = find_rho(cfg, i)
    assert gcd(w.rho, 7) == 1
    assert w.rho - 7 in cfg.values


def test_rho_requires_coprime():
    with pytest.raises(ValueError):
        chi2_from_rho(Family.OCT, "(0,1,2)", 9, 3)


def test_witness_order_is_deterministic():
    cfg = validate_config("tri", (-9, 15, 23))
    a = [(w.x, w.y, w.rho) for w in rho_witnesses(cfg, (0, 0), 10)]
    b = [(w.x, w.y, w.rho) for w in rho_witnesses(cfg, (0, 0), 10)]
    assert a == b and len(a) > 20


@pytest.mark.parametrize("row", ROWS, ids=_row_id)
def test_table_chi2(row):
    cfg = validate_config(row.family.value, row.seed)
    assert chi2_packing(cfg, samples=24).value == row.chi2


@pytest.mark.parametrize("kind,seed", [("square", (-3, 5, 13, 21)), ("tri", (-5, 7, 19)),
                                       ("tri", (-2, 3, 6)), ("oct", (-2, 3, 6, 8, 11, 16))])
def test_no_per_circle_symbol(kind, seed):
    cfg = validate_config(kind, seed)
    cid = next(c for c in (cfg.circle_ids(1) if kind in ("square", "tri") else cfg.circle_ids())
               if cfg.curvature(c) != 0)
    with pytest.raises(NotApplicable):
        chi2_circle(cfg, cid)


def test_cube_partial_has_circle_symbol_only():
    cfg = validate_config("cube", (-1, 2, 3, 4, 6, 7, 8, 11))
    assert chi2_packing(cfg).value is None
    assert {chi2_circle(cfg, i) for i in cfg.circle_ids() if cfg.values[i]} == {1, -1}


@pytest.mark.parametrize("row", [r for r in ROWS if r.type_label in CIRCLE_TYPES[r.family]], ids=_row_id)
def test_node_independence(row):
    cfg = validate_config(row.family.value, row.seed)
    label = modular_type(cfg).label
    for st_ in random_states(cfg, 6, random.Random(9), 8):
        ids = st_.circle_ids(1) if row.family in (Family.SQUARE, Family.TRI) else st_.circle_ids()
        for cid in ids:
            a = st_.curvature(cid)
            if a == 0:
                continue
            vals = {chi2_from_rho(row.family, label, a, w.rho) for w in rho_witnesses(st_, cid, 12)}
            assert len(vals) == 1


@pytest.mark.parametrize("row", [r for r in ROWS if r.type_label in CIRCLE_TYPES[r.family]], ids=_row_id)
def test_edge_agreement(row):
    cfg = validate_config(row.family.value, row.seed)
    opposite = row.family is Family.CUBE and row.type_label == "(0,2,3)"
    n = 0
    for st_ in random_states(cfg, 10, random.Random(2), 10):
        for p, q in tangent_coprime_pairs(st_, positive=False):
            assert (chi2_circle(st_, p) == -chi2_circle(st_, q)) == opposite
            n += 1
    assert n > 0


@pytest.mark.parametrize("row", [r for r in ROWS if r.family is Family.OCT and r.chi2 is None], ids=_row_id)
def test_oct_pair_symbol_symmetric(row):
    cfg = validate_config("oct", row.seed)
    for st_ in random_states(cfg, 40, random.Random(3), 10):
        for p, q in tangent_coprime_pairs(st_, positive=False):
            assert partial_symbol(st_, (p, q)) == partial_symbol(st_, (q, p))


@pytest.mark.parametrize("row", [r for r in ROWS if r.family is Family.OCT and r.chi2 is None], ids=_row_id)
def test_oct_colors_consistent(row):
    # yellow-red pairs have symbol +1 and yellow-blue -1 wherever the colours are resolved
    cfg = validate_config("oct", row.seed)
    for st_ in random_states(cfg, 30, random.Random(8), 8):
        names = oct_partial_colors(st_)
        if "red" not in names.values():
            continue
        for i in st_.circle_ids():
            if names[i] != "yellow":
                continue
            for j in st_.neighbors(i):
                if names[j] in ("red", "blue") and gcd(st_.values[i], st_.values[j]) == 1:
                    assert partial_symbol(st_, (i, j)) == (1 if names[j] == "red" else -1)


def test_pair_symbol_errors():
    cfg = validate_config("oct", (-2, 3, 6, 8, 11, 16))
    with pytest.raises(ValueError):
        partial_symbol(cfg, (0, 5))
    even = [i for i in cfg.circle_ids() if cfg.values[i] % 2 == 0]
    p, q = next((p, q) for p in even for q in even if q in cfg.neighbors(p))
    with pytest.raises(ValueError):
        partial_symbol(cfg, (p, q))


ARROWS = [
    ("square", (-3, 5, 13, 21), 2, False),
    ("square", (-27, 37, 173, 237), 2, False),
    ("square", (-1, 3, 3, 7), 2, False),
    ("square", (-5, 7, 31, 43), 2, False),
    ("tri", (-5, 7, 19), 2, False),
    ("tri", (-17, 31, 43), 2, False),
    ("tri", (-3, 5, 9), 3, False),
    ("tri", (-7, 9, 33), 3, False),
    ("tri", (-1, 2, 2), 8, True),
    ("tri", (-4, 5, 20), 8, True),
    ("tri", (-2, 3, 6), 24, True),
    ("tri", (-3, 6, 7), 24, True),
]


@pytest.mark.parametrize("kind,seed,period,skip", ARROWS)
def test_arrow_pattern_consistent(kind, seed, period, skip):
    cfg = validate_config(kind, seed)
    for st_ in [cfg, *random_states(cfg, 3, random.Random(6), 4)]:
        classes = arrow_classes(st_, period, skip_mod4=skip)
        assert classes
        assert all(len(v) == 1 for v in classes.values())


@pytest.mark.parametrize("kind,seed,period", [(k, s, p) for k, s, p, skip in ARROWS if not skip])
def test_arrow_pattern_shared_by_states(kind, seed, period):
    cfg = validate_config(kind, seed)
    merged = {}
    for st_ in [cfg, *random_states(cfg, 4, random.Random(7), 6)]:
        for key, v in arrow_classes(st_, period).items():
            merged.setdefault(key, set()).update(v)
    assert all(len(v) == 1 for v in merged.values())


def test_constancy_examples():
    rep = form_symbol_constancy(QuadForm.of(3, -4, 2), 1)
    assert rep.constant and rep.value == 1
    with pytest.raises(ValueError):
        form_symbol_constancy(QuadForm.of(1, 2, -3), 2)


def test_constancy_rejected_input_really_varies():
    # the rejected input does take both symbols, so the divisibility rule is needed
    vals = {kronecker(x * x + 2 * x * y - 3 * y * y, 2)
            for x in range(-6, 7) for y in range(-6, 7) if (x * x + 2 * x * y - 3 * y * y) % 2}
    assert vals == {1, -1}


def test_constancy_on_tangency_forms():
    rng = random.Random(12)
    cfg = validate_config("oct", (-6, 10, 17, 17, 24, 40))
    checked = 0
    for st_ in random_states(cfg, 20, rng, 8):
        for i in st_.circle_ids():
            a = st_.values[i]
            if a % 2 == 0 or a < 0:
                continue
            q = tangent_forms(st_, i).forms["alpha"]
            rep = form_symbol_constancy(q, a, bound=30)
            assert rep.constant
            checked += 1
    assert checked > 0


@settings(max_examples=80)
@given(st.lists(st.integers(0, 7), min_size=0, max_size=14), st.sampled_from(ROWS))
def test_chi2_invariant_along_words(word, row):
    if row.chi2 is None:
        return
    cfg = validate_config(row.family.value, row.seed)
    for k in word:
        gens = generator_ids(cfg)
        cfg = apply_generator(cfg, gens[k % len(gens)])
    ids = cfg.circle_ids(1) if row.family in (Family.SQUARE, Family.TRI) else cfg.circle_ids()
    for cid in ids:
        if cfg.curvature(cid) != 0:
            assert chi2_circle(cfg, cid) == row.chi2


def test_packing_types_subset():
    for fam in Family:
        assert PACKING_TYPES[fam] <= CIRCLE_TYPES[fam]
