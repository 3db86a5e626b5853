import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circlepack.arith import exact_sqrt
from circlepack.configs import (
    ConfigError,
    CubeConfig,
    OctConfig,
    SquareGrid,
    TriGrid,
    apply_generator,
    color_of,
    coloring,
    complete_from_minimal,
    generator_ids,
    modular_type,
    type_by_label,
    validate_config,
)
from circlepack.invariants import random_states
from circlepack.kinds import Family, kind_of
from circlepack.tables import ROWS

SEEDS = [(r.family.value, r.seed) for r in ROWS]


def test_kinds():
    assert [kind_of(f).modulus for f in ("oct", "cube", "square", "tri")] == [8, 4, 8, 12]
    assert [kind_of(f).field for f in ("oct", "cube", "square", "tri")] == [2, 2, 1, 3]
    with pytest.raises(ValueError):
        kind_of("hex")


def test_oct_strip():
    c = validate_config("oct", (1, 0, 2, 0, 2, 1))
    assert c.w == 1


@pytest.mark.parametrize("vals", [(1, 0, 2, 0, 2, 3), (2, 0, 4, 0, 4, 2), (1, 2, 3, 4, 5, 6)])
def test_oct_invalid(vals):
    with pytest.raises(ConfigError):
        validate_config("oct", vals)


def test_arity():
    with pytest.raises(ConfigError):
        validate_config("tri", (1, 1))


def test_cube_unordered_labeling():
    c = validate_config("cube", [-1, 2, 3, 4, 6, 7, 8, 11])
    assert c.values == (-1, 2, 7, 4, 3, 6, 11, 8)
    assert c.w == 10
    a, b, cc, d, e, f, g, h = c.values
    assert 3 * (a + cc + f + h) ** 2 == 8 * (a * a + cc * cc + f * f + h * h)


def test_cube_unordered_any_order():
    vals = [-1, 2, 3, 4, 6, 7, 8, 11]
    rng = random.Random(3)
    for _ in range(5):
        rng.shuffle(vals)
        assert validate_config("cube", vals).values == (-1, 2, 7, 4, 3, 6, 11, 8)


def test_cube_no_labeling():
    with pytest.raises(ConfigError):
        validate_config("cube", [-1, 2, 3, 4, 6, 7, 8, 12])


def test_tri_seed():
    g = validate_config("tri", (1, 1, 1))
    assert isinstance(g, TriGrid)
    assert exact_sqrt((1 + 1 + 1) // 3) == 1


def test_complete_oct():
    assert complete_from_minimal("oct", (1, 0, 2), sign="-").values == (1, 0, 2, 0, 2, 1)
    assert complete_from_minimal("oct", (1, 0, 2), sign="+").values == (1, 0, 2, 8, 10, 9)
    with pytest.raises(ConfigError):
        complete_from_minimal("oct", (1, 1, 2))


def test_complete_tri_diamond():
    # the fourth vertex d = (1, -1) of the diamond on (0,0), (0,1), (1,0)
    ds = {tri_d(s) for s in "+-"}
    assert ds == {1, 13}


def tri_d(sign):
    return complete_from_minimal("tri", (1, 1, 1), sign=sign).curvature((1, -1))


def test_complete_square_staircase():
    ms = {complete_from_minimal("square", (1, 1, 1), sign=s).curvature((2, -1)) for s in "+-"}
    assert ms == {1, 9}


def test_generator_examples():
    assert apply_generator(OctConfig((1, 0, 2, 0, 2, 1)), (0, 1, 2)).values == (1, 0, 2, 8, 10, 9)
    cube = CubeConfig((-1, 2, 7, 4, 3, 6, 11, 8))
    assert apply_generator(cube, (0, 1, 2, 3)).values == (-1, 2, 7, 4, 7, 10, 15, 12)
    g = validate_config("tri", (1, 1, 1), sign="-")  # the flat (1,1,1) grid
    face = (1, -1, 0)
    corners = TriGrid.face_corners(face)
    flipped = apply_generator(g, face)
    assert all(flipped.curvature(p) == 1 for p in corners)
    assert 13 in {flipped.curvature(p) for p in flipped.circle_ids(2)}


def test_invalid_face():
    with pytest.raises(ConfigError):
        apply_generator(OctConfig((1, 0, 2, 0, 2, 1)), 9)


@pytest.mark.parametrize("kind,seed", SEEDS)
def test_generators_are_involutions(kind, seed):
    cfg = validate_config(kind, seed)
    for f in generator_ids(cfg):
        nxt = apply_generator(cfg, f)
        assert apply_generator(nxt, f) == cfg


def _relations(cfg):
    if isinstance(cfg, OctConfig):
        a, b, c, d, e, f = cfg.values
        w = cfg.w
        assert a + f == b + e == c + d == 2 * w
        assert w * w - 2 * w * (a + b + c) + a * a + b * b + c * c == 0
        assert exact_sqrt(2 * (a * b + a * c + b * c)) is not None
    elif isinstance(cfg, CubeConfig):
        a, b, c, d, e, f, g, h = cfg.values
        assert a + g == b + h == c + e == d + f
        assert a + c == b + d
        assert 3 * (a + c + f + h) ** 2 == 8 * (a * a + c * c + f * f + h * h)
    elif isinstance(cfg, SquareGrid):
        k = cfg.curvature
        for i in range(-3, 3):
            for j in range(-3, 3):
                assert k((i, j)) + k((i + 1, j + 1)) == k((i + 1, j)) + k((i, j + 1))
                J, K, L, M = k((i, j)), k((i + 1, j)), k((i + 1, j - 1)), k((i + 2, j - 1))
                assert (J - 3 * K) ** 2 + (M - 3 * L) ** 2 == 2 * (J + K) * (M + L)
    else:
        k = cfg.curvature
        for i in range(-3, 3):
            for j in range(-3, 3):
                a, b, c, d = k((i, j)), k((i, j + 1)), k((i + 1, j)), k((i + 1, j - 1))
                assert (3 * a - b + 3 * c - d) ** 2 == 12 * a * c + 4 * b * d


@pytest.mark.parametrize("kind,seed", SEEDS)
def test_relations_along_random_words(kind, seed):
    cfg = validate_config(kind, seed)
    t = modular_type(cfg)
    for st_ in random_states(cfg, 20, random.Random(seed[0]), 10):
        _relations(st_)
        assert modular_type(st_) == t


@pytest.mark.parametrize("kind,seed", [(k, s) for k, s in SEEDS if k == "tri"])
def test_both_completions_share_type(kind, seed):
    plus = validate_config(kind, seed, sign="+")
    minus = validate_config(kind, seed, sign="-")
    assert modular_type(plus) == modular_type(minus)
    pts = [(0, 0), (0, 1), (1, 0)]
    assert [plus.curvature(p) for p in pts] == [minus.curvature(p) for p in pts] == list(seed)


@pytest.mark.parametrize("kind,seed,label", [
    ("oct", (-6, 10, 17, 17, 24, 40), "(0,1,2)"),
    ("cube", (-1, 2, 3, 4, 6, 7, 8, 11), "(0,2,3)"),
    ("tri", (-11, 13, 73), "(1)"),
    ("square", (-1, 2, 3, 6), "full"),
])
def test_modular_type_examples(kind, seed, label):
    assert modular_type(validate_config(kind, seed)).label == label


@pytest.mark.parametrize("kind,seed", SEEDS)
def test_table_types(kind, seed):
    row = next(r for r in ROWS if r.seed == seed)
    assert modular_type(validate_config(kind, seed)).label == row.type_label


def test_type_by_label():
    assert type_by_label("tri", "(3,11)").residues == frozenset({3, 11})
    assert type_by_label("square", "full").residues == frozenset(range(8))
    with pytest.raises(ConfigError):
        type_by_label("oct", "(1,2,3)")


def test_cube_generator_mod8_action():
    # a face with odd diagonal sum fixes every residue mod 8, an even one moves the flipped circles by 4
    rng = random.Random(1)
    for seed in [(-1, 2, 3, 4, 6, 7, 8, 11), (-2, 5, 5, 6, 12, 13, 13, 20), (-7, 16, 18, 25, 41, 48, 50, 73)]:
        for st_ in random_states(validate_config("cube", seed), 20, rng, 6):
            for f, face in enumerate(st_.faces()):
                nxt = apply_generator(st_, f)
                diag = st_.values[face[0]] + st_.values[face[2]]
                diffs = {(n - o) % 8 for o, n in zip(st_.values, nxt.values)}
                assert diffs == ({0} if diag % 2 else {0, 4})


def test_tri_generator_lifts():
    # one odd corner: residues mod 8 kept everywhere; two odd corners: the lift changes
    rng = random.Random(2)
    for seed in [(-1, 2, 2), (-2, 3, 6), (-4, 5, 20), (-3, 6, 7)]:
        for st_ in random_states(validate_config("tri", seed), 10, rng, 5):
            for f in generator_ids(st_):
                nxt = apply_generator(st_, f)
                odd = sum(st_.curvature(p) % 2 for p in st_.face_corners(f))
                same = all(st_.curvature((i, j)) % 8 == nxt.curvature((i, j)) % 8
                           for i in range(-8, 8) for j in range(-8, 8))
                assert same == (odd == 1)


def test_coloring_oct():
    cfg = validate_config("oct", (-6, 10, 17, 17, 24, 40))
    col = coloring("oct", cfg)
    groups = {}
    for i, c in col.items():
        groups.setdefault(c, []).append(cfg.values[i])
    assert sorted(map(sorted, groups.values())) == [[-6, 40], [10, 24], [17, 17]]


@pytest.mark.parametrize("kind,seed", [s for s in SEEDS if s[0] != "square"])
def test_coloring_proper(kind, seed):
    cfg = validate_config(kind, seed)
    col = coloring(kind, cfg)
    for p in col:
        for q in cfg.neighbors(p):
            if q in col:
                assert col[p] != col[q]
    assert len(set(col.values())) == {"oct": 3, "cube": 2, "tri": 3}[kind]


def test_square_has_no_coloring():
    with pytest.raises(ConfigError):
        coloring("square", validate_config("square", (1, 1, 1, 1)))


@settings(max_examples=60)
@given(st.integers(-30, 30), st.integers(-30, 30), st.sampled_from(["square", "tri"]))
def test_grid_translation_invariance(s, u, kind):
    g = validate_config(kind, (-1, 2, 3, 6) if kind == "square" else (-11, 13, 73))
    t = g.translate(s, u)
    assert t.curvature((0, 0)) == g.curvature((s, u))
    assert t.curvature((1, 0)) == g.curvature((s + 1, u))
    assert t.symmetry_key() == g.symmetry_key()


@pytest.mark.parametrize("kind,seed", [(k, s) for k, s in SEEDS if k == "tri"] + [("square", (1, 1, 1))])
def test_both_completions_same_curvatures(kind, seed):
    from circlepack.enumeration import enumerate_curvatures

    make = validate_config if len(seed) == 3 and kind == "tri" else complete_from_minimal
    plus = enumerate_curvatures(make(kind, seed, sign="+"), 600)
    minus = enumerate_curvatures(make(kind, seed, sign="-"), 600)
    assert plus == minus
