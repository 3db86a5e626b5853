"""Oriented generalized circles in inversive coordinates (cocurv, curv, h1, h2).

The bilinear form is <c, c'> = h1 h1' + h2 h2' - (b b~' + b~ b') / 2 and every
oriented circle has <c, c> = 1.  Lines have curvature 0 and a unit normal
(h1, h2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .arith import FieldMismatch, QuadRat

_HALF = QuadRat(1) / 2


def qr(v, d: int = 1) -> QuadRat:
    """Lift an int, Fraction or QuadRat into field d."""
    if isinstance(v, QuadRat):
        if v.d == d or v.s == 0:
            return QuadRat(v.r, v.s, d)
        raise FieldMismatch(f"cannot move {v} into field {d}")
    return QuadRat(v, 0, d)


def _field(values: Iterable[QuadRat]) -> int:
    d = 1
    for v in values:
        if isinstance(v, QuadRat) and v.s != 0:
            if d not in (1, v.d):
                raise FieldMismatch("mixed field tags")
            d = v.d
    return d


@dataclass(frozen=True)
class InversiveCircle:
    cocurv: QuadRat
    curv: QuadRat
    h1: QuadRat
    h2: QuadRat

    @classmethod
    def of(cls, cocurv, curv, h1, h2, d: int | None = None, check: bool = True):
        raw = (cocurv, curv, h1, h2)
        if d is None:
            d = _field(v for v in raw if isinstance(v, QuadRat))
        c = cls(*(qr(v, d) for v in raw))
        if check and c.norm() != 1:
            raise ValueError(f"not a unit circle vector: {c}")
        return c

    @property
    def d(self) -> int:
        return self.cocurv.d

    def vector(self) -> tuple[QuadRat, QuadRat, QuadRat, QuadRat]:
        return (self.cocurv, self.curv, self.h1, self.h2)

    def norm(self) -> QuadRat:
        return inner_product(self, self)

    def is_line(self) -> bool:
        return not self.curv

    def __neg__(self):
        return InversiveCircle(-self.cocurv, -self.curv, -self.h1, -self.h2)

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.vector()) + ")"


def _bilinear(u: Sequence[QuadRat], v: Sequence[QuadRat]) -> QuadRat:
    return u[2] * v[2] + u[3] * v[3] - (u[1] * v[0] + u[0] * v[1]) * _HALF


def inner_product(c1: InversiveCircle, c2: InversiveCircle) -> QuadRat:
    if c1.d != c2.d and c1.d != 1 and c2.d != 1:
        raise FieldMismatch(f"field tags differ: {c1.d} vs {c2.d}")
    return _bilinear(c1.vector(), c2.vector())


def reflect(c: InversiveCircle, mirror: InversiveCircle) -> InversiveCircle:
    """Reflection (inversion) of c in the circle `mirror`."""
    if mirror.norm() != 1:
        raise ValueError("mirror is not a unit vector")
    k = inner_product(c, mirror) * 2
    return InversiveCircle(*(a - k * m for a, m in zip(c.vector(), mirror.vector())))


def is_tangent(c1: InversiveCircle, c2: InversiveCircle) -> bool:
    """External tangency of consistently oriented packing circles."""
    return inner_product(c1, c2) == -1


# ---- linear maps ---------------------------------------------------------------

Matrix = tuple[tuple[QuadRat, ...], ...]

# Gram matrix of the form in the (cocurv, curv, h1, h2) basis
_G = ((0, -_HALF, 0, 0), (-_HALF, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(m)), QuadRat(0)) for j in range(p))
        for i in range(n)
    )


def _transpose(a):
    return tuple(tuple(row[j] for row in a) for j in range(len(a[0])))


def _identity(n=4):
    return tuple(tuple(QuadRat(int(i == j)) for j in range(n)) for i in range(n))


def _solve(a, b):
    """Solve a X = b exactly (a square, b a matrix) by Gauss-Jordan elimination."""
    n = len(a)
    rows = [list(a[i]) + list(b[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            raise ValueError("singular system")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
    return tuple(tuple(row[n:]) for row in rows)


class LinearCircleMap:
    """A 4x4 matrix acting on column vectors (cocurv, curv, h1, h2).

    Construction rejects matrices that do not preserve the bilinear form.
    """

    __slots__ = ("m",)

    def __init__(self, rows, check: bool = True):
        m = tuple(tuple(QuadRat(v) if not isinstance(v, QuadRat) else v for v in r) for r in rows)
        if len(m) != 4 or any(len(r) != 4 for r in m):
            raise ValueError("need a 4x4 matrix")
        self.m = m
        if check and not self.preserves_form():
            raise ValueError("matrix does not preserve the inversive form")

    def preserves_form(self) -> bool:
        lhs = _matmul(_matmul(_transpose(self.m), _G), self.m)
        return all(lhs[i][j] == _G[i][j] for i in range(4) for j in range(4))

    def __matmul__(self, other: "LinearCircleMap") -> "LinearCircleMap":
        return LinearCircleMap(_matmul(self.m, other.m), check=False)

    def __eq__(self, other):
        return isinstance(other, LinearCircleMap) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    @classmethod
    def identity(cls) -> "LinearCircleMap":
        return cls(_identity(), check=False)

    @classmethod
    def reflection(cls, mirror: InversiveCircle) -> "LinearCircleMap":
        """I - 2 m m^T G."""
        mv = mirror.vector()
        gm = [sum((_G[i][k] * mv[k] for k in range(4)), QuadRat(0)) for i in range(4)]
        rows = [[(1 if i == j else 0) - 2 * mv[i] * gm[j] for j in range(4)] for i in range(4)]
        return cls(rows)

    @classmethod
    def from_circles(cls, sources: Sequence[InversiveCircle], targets: Sequence[InversiveCircle]):
        """The unique linear map sending four independent circles to four targets."""
        if len(sources) != 4 or len(targets) != 4:
            raise ValueError("need four source and four target circles")
        s = _transpose(tuple(c.vector() for c in sources))
        t = _transpose(tuple(c.vector() for c in targets))
        # M S = T  <=>  S^T M^T = T^T
        mt = _solve(_transpose(s), _transpose(t))
        return cls(_transpose(mt))

    def curvature_row(self) -> tuple[QuadRat, ...]:
        return self.m[1]


def apply_map(m: LinearCircleMap, c: InversiveCircle) -> InversiveCircle:
    v = c.vector()
    return InversiveCircle(*(sum((row[k] * v[k] for k in range(4)), QuadRat(0)) for row in m.m))


def euclidean_data(c: InversiveCircle) -> dict:
    """Floating point center/radius, or normal/offset for a line (rendering only)."""
    b = float(c.curv)
    if b == 0:
        # a line: points p with <p, (h1, h2)> = cocurv / 2
        return {"line": {"normal": (float(c.h1), float(c.h2)), "offset": float(c.cocurv) / 2}}
    return {"center": (float(c.h1) / b, float(c.h2) / b), "radius": 1 / abs(b), "curvature": b}
