"""Generalized Ford circles of the four strip packings and their dual circles.

A Ford circle is a circle of the strip packing tangent to the real axis.  Each
family parametrizes them by coprime (x, y) with y >= 0, split into an alpha
and a beta class (the cubic family has a single class).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable

from .arith import QuadRat
from .inversive import InversiveCircle, inner_product, reflect
from .kinds import Family, PackingKind, kind_of

R2 = QuadRat.sqrt(2)
R3 = QuadRat.sqrt(3)


@dataclass(frozen=True)
class FordCircle:
    form: str  # "alpha", "beta" or "" for the single cubic class
    x: int
    y: int
    circle: InversiveCircle


def _circ(b_, b, h1, h2, d):
    return InversiveCircle.of(b_, b, h1, h2, d=d)


def ford_form(family: Family, x: int, y: int) -> str:
    if family is Family.OCT:
        return "alpha" if x % 2 else "beta"
    if family is Family.SQUARE:
        return "alpha" if (x * y) % 2 else "beta"
    if family is Family.TRI:
        return "beta" if y % 3 == 0 else "alpha"
    return ""


def ford_circle(family: Family, x: int, y: int) -> InversiveCircle:
    """The Ford circle with parameter (x, y) (coprime, y >= 0)."""
    form = ford_form(family, x, y)
    if family is Family.OCT:
        if form == "alpha":
            return _circ(4 * x * x, 2 * y * y, 2 * x * y * R2, 1, 2)
        return _circ(2 * x * x, y * y, x * y * R2, 1, 2)
    if family is Family.CUBE:
        return _circ(8 * x * x, y * y, 2 * x * y * R2, 1, 2)
    if family is Family.SQUARE:
        if form == "alpha":
            return _circ(4 * x * x, y * y, 2 * x * y, 1, 1)
        return _circ(8 * x * x, 2 * y * y, 4 * x * y, 1, 1)
    if form == "alpha":
        return _circ(12 * x * x, y * y, 2 * x * y * R3, 1, 3)
    return _circ(4 * x * x, Fraction(y * y, 3), Fraction(2 * x * y, 3) * R3, 1, 3)


def tangent_point(family: Family, x: int, y: int) -> QuadRat | None:
    """Point of tangency with the real axis; None for the point at infinity."""
    if y == 0:
        return None
    scale = {Family.OCT: R2, Family.CUBE: 2 * R2, Family.SQUARE: QuadRat(2), Family.TRI: 2 * R3}
    return scale[family] * Fraction(x, y)


def normalize(x: int, y: int) -> tuple[int, int]:
    """Representative of +-(x, y) with y > 0, or (1, 0)."""
    if y < 0 or (y == 0 and x < 0):
        return -x, -y
    return x, y


def ford_circles(kind: PackingKind | Family | str, bound: int) -> list[FordCircle]:
    """All Ford circles with coprime (x, y), y >= 0, |x|, y <= bound."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    fam = kind_of(kind).family
    out = []
    for y in range(0, bound + 1):
        for x in range(-bound, bound + 1):
            if gcd(x, y) != 1 or (y == 0 and x != 1):
                continue
            out.append(FordCircle(ford_form(fam, x, y), x, y, ford_circle(fam, x, y)))
    return out


def decode(family: Family, c: InversiveCircle) -> tuple[int, int] | None:
    """Recover (x, y) if c is exactly a Ford circle of the family, else None."""
    if c.h2 != 1:
        return None
    cands = []
    tp = None
    if c.curv:
        tp = c.h1 / c.curv
    for y_sq_scale in (1, 2, Fraction(1, 3)):
        try:
            ysq = c.curv / y_sq_scale
        except ZeroDivisionError:
            continue
        if not ysq.is_rational() or ysq.r.denominator != 1 or ysq.r < 0:
            continue
        from .arith import exact_sqrt

        y = exact_sqrt(ysq.r.numerator)
        if y is None:
            continue
        if y == 0:
            cands.append((1, 0))
            continue
        # x from the tangent point 2*scale*x/y
        t = tangent_point(family, 1, y)
        x_q = tp / t
        if x_q.is_rational() and x_q.r.denominator == 1:
            cands.append((x_q.r.numerator, y))
    for x, y in cands:
        if gcd(x, y) == 1 and ford_circle(family, x, y) == c:
            return x, y
    return None


# ---- dual circles ----------------------------------------------------------------

@dataclass(frozen=True)
class DualCircle:
    name: str
    circle: InversiveCircle
    # action on Ford parameters, before sign normalization
    action: Callable[[int, int], tuple[int, int]]
    # inner product with c(x, y) per class, as a function of (x, y)
    products: dict


def _oct_duals() -> list[DualCircle]:
    return [
        DualCircle("d1", _circ(0, 0, -1, 0, 2), lambda x, y: (-x, y),
                   {"alpha": lambda x, y: -2 * R2 * x * y, "beta": lambda x, y: -R2 * x * y}),
        # printed coordinates of this line; it sits at real part 2*sqrt2 and acts as 4y - x
        DualCircle("d2", _circ(4 * R2, 0, 1, 0, 2), lambda x, y: (4 * y - x, y),
                   {"alpha": lambda x, y: 2 * R2 * (x - 2 * y) * y,
                    "beta": lambda x, y: R2 * (x - 2 * y) * y}),
        DualCircle("d3", _circ(0, R2, 1, 0, 2), lambda x, y: (x, 2 * x - y),
                   {"alpha": lambda x, y: 2 * R2 * x * (y - x), "beta": lambda x, y: R2 * x * (y - x)}),
        DualCircle("d4", _circ(4 * R2, R2, 3, 0, 2), lambda x, y: (4 * y - 3 * x, 3 * y - 2 * x),
                   {"alpha": lambda x, y: 2 * R2 * (y - x) * (x - 2 * y),
                    "beta": lambda x, y: R2 * (y - x) * (x - 2 * y)}),
    ]


def _cube_duals() -> list[DualCircle]:
    return [
        DualCircle("d1", _circ(0, 0, -1, 0, 2), lambda x, y: (-x, y),
                   {"": lambda x, y: -2 * R2 * x * y}),
        DualCircle("d2", _circ(4 * R2, 0, 1, 0, 2), lambda x, y: (2 * y - x, y),
                   {"": lambda x, y: 2 * R2 * (x - y) * y}),
        DualCircle("d3", _circ(0, R2 / 2, 1, 0, 2), lambda x, y: (x, 2 * x - y),
                   {"": lambda x, y: 2 * R2 * x * (y - x)}),
    ]


def _square_duals() -> list[DualCircle]:
    # lines at x = 2 and x = -2, unit circles centred at 1 and -1
    return [
        DualCircle("d1", _circ(4, 0, 1, 0, 1), lambda x, y: (2 * y - x, y), {}),
        DualCircle("d2", _circ(4, 0, -1, 0, 1), lambda x, y: (-x - 2 * y, y), {}),
        DualCircle("d3", _circ(0, 1, 1, 0, 1), lambda x, y: (x, 2 * x - y), {}),
        DualCircle("d4", _circ(0, 1, -1, 0, 1), lambda x, y: (x, -2 * x - y), {}),
    ]


def _tri_duals() -> list[DualCircle]:
    # lines at 0 and 2*sqrt3; circles of radius 1/sqrt3 at 1/sqrt3 and 5/sqrt3;
    # circles of radius 1/(2 sqrt3) at 5/(2 sqrt3) and 7/(2 sqrt3)
    return [
        DualCircle("d1", _circ(0, 0, -1, 0, 3), lambda x, y: (-x, y), {}),
        DualCircle("d2", _circ(4 * R3, 0, 1, 0, 3), lambda x, y: (2 * y - x, y), {}),
        DualCircle("d3", _circ(0, R3, 1, 0, 3), lambda x, y: (x, 6 * x - y), {}),
        DualCircle("d4", _circ(8 * R3, R3, 5, 0, 3), lambda x, y: (5 * x - 4 * y, 6 * x - 5 * y), {}),
        DualCircle("d5", _circ(4 * R3, 2 * R3, 5, 0, 3), lambda x, y: (5 * x - 2 * y, 12 * x - 5 * y), {}),
        DualCircle("d6", _circ(8 * R3, 2 * R3, 7, 0, 3), lambda x, y: (7 * x - 4 * y, 12 * x - 7 * y), {}),
    ]


_DUALS = {
    Family.OCT: _oct_duals,
    Family.CUBE: _cube_duals,
    Family.SQUARE: _square_duals,
    Family.TRI: _tri_duals,
}

# Ford parameters of the base circles tangent to the real axis
BASE = {
    Family.OCT: {(1, 0), (0, 1), (2, 1), (1, 1)},
    Family.CUBE: {(1, 0), (0, 1), (1, 1)},
    Family.SQUARE: {(1, 0), (0, 1), (1, 1), (-1, 1)},
    Family.TRI: {(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)},
}


def dual_circles(kind) -> list[DualCircle]:
    return _DUALS[kind_of(kind).family]()


@dataclass
class FordCheck:
    family: Family
    bound: int
    checked: int = 0
    failures: list = None

    def __post_init__(self):
        if self.failures is None:
            self.failures = []

    @property
    def ok(self) -> bool:
        return not self.failures


def check_ford(kind, bound: int = 20) -> FordCheck:
    """Exact checks of the three closure properties and the dual tables.

    (1) base circles tangent to the axis are Ford circles;
    (2) reflecting a Ford circle in a dual gives the Ford circle predicted by the
        dual's action, in the same class;
    (3) a Ford circle meets a dual (|<c, d>| < 1) only if it is a base circle,
        and then <c, d> = 0.
    Where an inner product formula is tabulated it is checked as well.
    """
    fam = kind_of(kind).family
    rep = FordCheck(fam, bound)
    duals = dual_circles(fam)
    for x, y in BASE[fam]:
        c = ford_circle(fam, x, y)
        if decode(fam, c) != normalize(x, y):
            rep.failures.append(("base", (x, y)))
    for fc in ford_circles(fam, bound):
        for du in duals:
            rep.checked += 1
            img = reflect(fc.circle, du.circle)
            want = normalize(*du.action(fc.x, fc.y))
            if img != ford_circle(fam, *want):
                rep.failures.append(("reflect", du.name, (fc.x, fc.y), want))
            elif ford_form(fam, *want) != fc.form:
                rep.failures.append(("class", du.name, (fc.x, fc.y), want))
            ip = inner_product(fc.circle, du.circle)
            f = du.products.get(fc.form)
            if f is not None and ip != f(fc.x, fc.y):
                rep.failures.append(("product", du.name, (fc.x, fc.y)))
            if abs(ip) < 1:
                if (fc.x, fc.y) not in BASE[fam] or ip != 0:
                    rep.failures.append(("meets", du.name, (fc.x, fc.y)))
    return rep
