from fractions import Fraction
from itertools import combinations

import pytest

from circlepack.arith import QuadRat
from circlepack.ford import (
    BASE,
    check_ford,
    decode,
    dual_circles,
    ford_circle,
    ford_circles,
    normalize,
    tangent_point,
)
from circlepack.inversive import InversiveCircle, inner_product, is_tangent
from circlepack.kinds import Family

R2, R3 = QuadRat.sqrt(2), QuadRat.sqrt(3)
FIELD = {Family.OCT: 2, Family.CUBE: 2, Family.SQUARE: 1, Family.TRI: 3}
# the real axis, oriented so that the strip packing lies on its positive side
AXIS = {d: InversiveCircle.of(0, 0, 0, -1, d=d) for d in (1, 2, 3)}


def _curv(fam, form, y):
    # curvature of the Ford circle as a function of y alone
    table = {
        (Family.OCT, "alpha"): 2 * y * y, (Family.OCT, "beta"): y * y,
        (Family.CUBE, ""): y * y,
        (Family.SQUARE, "alpha"): y * y, (Family.SQUARE, "beta"): 2 * y * y,
        (Family.TRI, "alpha"): y * y, (Family.TRI, "beta"): Fraction(y * y, 3),
    }
    return table[fam, form]


def test_printed_examples():
    assert ford_circle(Family.OCT, 1, 1) == InversiveCircle.of(4, 2, 2 * R2, 1, d=2)
    assert ford_circle(Family.CUBE, 1, 0) == InversiveCircle.of(8, 0, 0, 1, d=2)
    t = ford_circle(Family.TRI, 1, 1)
    assert t == InversiveCircle.of(12, 1, 2 * R3, 1, d=3)
    assert t.norm() == 1


@pytest.mark.parametrize("fam", list(Family))
def test_geometry_from_tangent_point(fam):
    # a circle tangent to the axis at t with curvature k, lying above it, is (k t^2, k, k t, 1)
    for fc in ford_circles(fam, 8):
        assert fc.circle.norm() == 1
        k = _curv(fam, fc.form, fc.y)
        t = tangent_point(fam, fc.x, fc.y)
        if t is None:
            # the line parallel to the axis
            assert fc.circle.curv == 0 and abs(inner_product(fc.circle, AXIS[FIELD[fam]])) == 1
            continue
        assert is_tangent(fc.circle, AXIS[FIELD[fam]])
        assert fc.circle == InversiveCircle.of(k * t * t, k, k * t, 1, d=FIELD[fam])


@pytest.mark.parametrize("fam", list(Family))
def test_decode_round_trip(fam):
    for fc in ford_circles(fam, 10):
        assert decode(fam, fc.circle) == (fc.x, fc.y)


@pytest.mark.parametrize("fam", list(Family))
def test_ford_circles_do_not_overlap(fam):
    circles = [fc.circle for fc in ford_circles(fam, 5)]
    for c1, c2 in combinations(circles, 2):
        assert inner_product(c1, c2) <= -1


@pytest.mark.parametrize("fam", list(Family))
def test_closure_and_duals(fam):
    rep = check_ford(fam, 20)
    assert rep.ok, rep.failures[:5]
    assert rep.checked == len(ford_circles(fam, 20)) * len(dual_circles(fam))


@pytest.mark.parametrize("fam", list(Family))
def test_duals_orthogonal_to_axis(fam):
    for du in dual_circles(fam):
        assert du.circle.norm() == 1
        assert inner_product(du.circle, AXIS[FIELD[fam]]) == 0


@pytest.mark.parametrize("fam", list(Family))
def test_duals_are_involutions_on_parameters(fam):
    for du in dual_circles(fam):
        for x, y in [(1, 0), (0, 1), (3, 5), (-2, 7)]:
            assert normalize(*du.action(*du.action(x, y))) == normalize(x, y)


def test_base_sets():
    assert len(BASE[Family.TRI]) == 6 and (1, 0) in BASE[Family.CUBE]


def test_bound_must_be_positive():
    with pytest.raises(ValueError):
        ford_circles("oct", 0)
