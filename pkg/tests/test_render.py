import itertools
import math
import xml.etree.ElementTree as ET

import pytest

from circlepack.configs import validate_config
from circlepack.enumeration import enumerate_curvatures
from circlepack.render import UnboundedRequest, packing_disks, render_svg

CASES = [("oct", (-1, 2, 2, 4, 4, 7), 60), ("cube", (-1, 2, 3, 4, 6, 7, 8, 11), 40),
         ("square", (-1, 2, 3, 6), 60), ("tri", (-9, 15, 23), 200)]


@pytest.mark.parametrize("kind,seed,bound", CASES)
def test_disks_match_enumeration(kind, seed, bound):
    cfg = validate_config(kind, seed)
    disks = packing_disks(cfg, bound=bound)
    ks = sorted({d.curvature for d in disks if d.curvature > 0})
    assert ks == [int(v) for v in enumerate_curvatures(cfg, bound).values()]


@pytest.mark.parametrize("kind,seed,bound", CASES)
def test_disks_nest_and_do_not_overlap(kind, seed, bound):
    disks = packing_disks(validate_config(kind, seed), bound=bound)
    outer = [d for d in disks if d.curvature < 0]
    assert len(outer) == 1
    o = outer[0]
    assert o.r == pytest.approx(1 / abs(o.curvature))
    inner = [d for d in disks if d.curvature > 0]
    for d in inner:
        assert d.r == pytest.approx(1 / d.curvature)
        assert math.hypot(d.x - o.x, d.y - o.y) + d.r <= o.r + 1e-7
    for a, b in itertools.combinations(inner, 2):
        assert math.hypot(a.x - b.x, a.y - b.y) >= a.r + b.r - 1e-7


def test_tangencies_present():
    disks = packing_disks(validate_config("oct", (-1, 2, 2, 4, 4, 7)), bound=30)
    inner = [d for d in disks if d.curvature > 0]
    touching = sum(1 for a, b in itertools.combinations(inner, 2)
                   if abs(math.hypot(a.x - b.x, a.y - b.y) - (a.r + b.r)) < 1e-9)
    assert touching >= len(inner)


def test_svg_structure(tmp_path):
    path = tmp_path / "oct.svg"
    n = render_svg(validate_config("oct", (-1, 2, 2, 4, 4, 7)), path, depth=3, labels=True, colors=True)
    root = ET.parse(path).getroot()
    circles = root.findall("{http://www.w3.org/2000/svg}circle")
    assert len(circles) == n
    outer = [c for c in circles if int(c.get("data-k")) < 0]
    assert len(outer) == 1 and float(outer[0].get("r")) == pytest.approx(800 / 2.2)
    fills = {c.get("fill") for c in circles if int(c.get("data-k")) > 0}
    assert len(fills) == 3
    assert root.findall("{http://www.w3.org/2000/svg}text")


def test_depth_zero_is_seed(tmp_path):
    cfg = validate_config("oct", (-1, 2, 2, 4, 4, 7))
    ks = sorted(d.curvature for d in packing_disks(cfg, depth=0))
    assert ks == [-1, 2, 2, 4, 4, 7]


def test_unbounded_requests(tmp_path):
    with pytest.raises(UnboundedRequest):
        packing_disks(validate_config("oct", (-1, 2, 2, 4, 4, 7)))
    with pytest.raises(UnboundedRequest):
        packing_disks(validate_config("oct", (1, 0, 2, 0, 2, 1)), bound=10)
    with pytest.raises(UnboundedRequest):
        packing_disks(validate_config("square", (1, 1, 1, 1)), bound=10)
