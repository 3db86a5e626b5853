"""Packing configurations, Apollonian generators, modular types and colorings.

Octahedral and cubic packings are tracked through their finite base
configurations (a sextuple and an octuple).  A square or triangular grid
configuration is infinite, but every one of them has curvatures given by a
single quadratic polynomial on the lattice,

    square:   k(i, j) = A (i^2 + j^2)      + B i + C j + E
    triangle: k(i, j) = A (i^2 + i j + j^2) + B i + C j + E

with (A, B, C, E) on a quadric (B^2 + C^2 - 4AE = A^2, resp.
4(B^2 - BC + C^2) - 12AE = 3A^2).  A grid state is stored as that polynomial;
the linear window relations hold identically and the quadratic ones reduce to
the quadric.  Flipping a face is a reflection of this quadric fixing the face.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import floor, gcd
from typing import Iterator, Sequence, Union

from .arith import exact_sqrt
from .kinds import Family, PackingKind, kind_of


class ConfigError(ValueError):
    """Input does not describe a valid primitive configuration."""


def _gcd_all(xs) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


def _sign_value(sign) -> int:
    if sign in (1, "+", "plus", None):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise ConfigError(f"sign must be + or -, got {sign!r}")


# ---- octahedral sextuples -------------------------------------------------------

# positions a..f = 0..5; diagonal pairs (a,f), (b,e), (c,d)
OCT_OPP = (5, 4, 3, 2, 1, 0)
OCT_FACES = tuple(tuple(sorted((x, y, z))) for x in (0, 5) for y in (1, 4) for z in (2, 3))
OCT_EDGES = tuple((i, j) for i in range(6) for j in range(i + 1, 6) if OCT_OPP[i] != j)

# cube: top face a b c d, bottom e f g h, vertical edges a-e, b-f, c-g, d-h
CUBE_EDGES = ((0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7),
              (0, 4), (1, 5), (2, 6), (3, 7))
CUBE_FACES = ((0, 1, 2, 3), (4, 5, 6, 7), (0, 1, 5, 4), (1, 2, 6, 5), (2, 3, 7, 6), (3, 0, 4, 7))
CUBE_OPP = (6, 7, 4, 5, 2, 3, 0, 1)
CUBE_CLASS = (0, 1, 0, 1, 1, 0, 1, 0)  # bipartition {a,c,f,h} / {b,d,e,g}

LETTERS = "abcdefgh"


def _adjacency(n, edges):
    adj = [set() for _ in range(n)]
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    return adj


@lru_cache(maxsize=None)
def automorphisms(family: Family) -> tuple[tuple[int, ...], ...]:
    """Vertex permutations of the octahedron or cube preserving adjacency."""
    n, edges = (6, OCT_EDGES) if family is Family.OCT else (8, CUBE_EDGES)
    es = {frozenset(e) for e in edges}
    out = []
    for p in permutations(range(n)):
        if all(frozenset((p[i], p[j])) in es for i, j in edges):
            out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class OctConfig:
    values: tuple[int, ...]

    kind = kind_of(Family.OCT)
    size = 6

    @property
    def w(self) -> int:
        return (self.values[0] + self.values[5]) // 2

    def curvature(self, i: int) -> int:
        return self.values[self._idx(i)]

    def _idx(self, i) -> int:
        if isinstance(i, str):
            i = LETTERS.index(i)
        if not 0 <= i < 6:
            raise ConfigError(f"circle id {i} out of range")
        return i

    def circle_ids(self):
        return range(6)

    def neighbors(self, i) -> list[int]:
        i = self._idx(i)
        return [j for j in range(6) if j != i and j != OCT_OPP[i]]

    def tangent_pairs(self):
        return OCT_EDGES

    def faces(self):
        return OCT_FACES

    def relabel(self, perm: Sequence[int]) -> "OctConfig":
        return OctConfig(tuple(self.values[p] for p in perm))

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class CubeConfig:
    values: tuple[int, ...]

    kind = kind_of(Family.CUBE)
    size = 8

    @property
    def w(self) -> int:
        return self.values[0] + self.values[6]

    def _idx(self, i) -> int:
        if isinstance(i, str):
            i = LETTERS.index(i)
        if not 0 <= i < 8:
            raise ConfigError(f"circle id {i} out of range")
        return i

    def curvature(self, i) -> int:
        return self.values[self._idx(i)]

    def circle_ids(self):
        return range(8)

    def neighbors(self, i) -> list[int]:
        i = self._idx(i)
        return sorted(_adjacency(8, CUBE_EDGES)[i])

    def tangent_pairs(self):
        return CUBE_EDGES

    def faces(self):
        return CUBE_FACES

    def relabel(self, perm: Sequence[int]) -> "CubeConfig":
        return CubeConfig(tuple(self.values[p] for p in perm))

    def __iter__(self):
        return iter(self.values)


# ---- grid states -------------------------------------------------------------------

SQ_NEIGHBORS = ((1, 0), (0, 1), (-1, 0), (0, -1))
# cyclic order around a vertex
TRI_NEIGHBORS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

GridFace = tuple


def _tri_symmetries():
    """The 12 linear maps of Z^2 preserving i^2 + ij + j^2."""
    out = []
    for m11 in range(-1, 2):
        for m12 in range(-1, 2):
            for m21 in range(-1, 2):
                for m22 in range(-1, 2):
                    q = lambda i, j: i * i + i * j + j * j
                    cols = ((m11, m21), (m12, m22))
                    if q(*cols[0]) == 1 and q(*cols[1]) == 1 and \
                            q(m11 + m12, m21 + m22) == 3 and m11 * m22 - m12 * m21 != 0:
                        out.append(((m11, m12), (m21, m22)))
    return tuple(out)


@dataclass(frozen=True)
class _Grid:
    A: int
    B: int
    C: int
    E: int

    def poly(self) -> tuple[int, int, int, int]:
        return (self.A, self.B, self.C, self.E)

    def vertex(self) -> tuple[float, float]:
        raise NotImplementedError

    def curvature(self, cid) -> int:
        i, j = cid
        return self.A * self.q(i, j) + self.B * i + self.C * j + self.E

    def circle_ids(self, radius: int = 2) -> list[tuple[int, int]]:
        vi, vj = self.vertex()
        ci, cj = round(vi), round(vj)
        return [(ci + di, cj + dj) for di in range(-radius, radius + 1) for dj in range(-radius, radius + 1)]

    def neighbors(self, cid) -> list[tuple[int, int]]:
        i, j = cid
        return [(i + di, j + dj) for di, dj in self.NEIGHBORS]

    def tangent_pairs(self, radius: int = 2):
        ids = set(self.circle_ids(radius))
        out = []
        for p in sorted(ids):
            for n in self.neighbors(p):
                if n in ids and p < n:
                    out.append((p, n))
        return out

    def translate(self, s: int, u: int):
        """The grid relabelled so that new point (i, j) is old point (i + s, j + u)."""
        A, B, C, E = self.poly()
        ds, du = self.shift_linear(s, u)
        return type(self)(A, B + A * ds, C + A * du, self.curvature((s, u)))

    def canonical(self):
        """Translate so the vertex lies in the unit cell at the origin (flat grids: E only)."""
        if self.A == 0:
            return type(self)(0, 0, 0, self.E)
        s, u = self.vertex_cell()
        return self.translate(s, u)

    def transform(self, m):
        """The grid relabelled by a lattice symmetry m: new point x is old point m x."""
        (m11, m12), (m21, m22) = m
        return type(self)(self.A, self.B * m11 + self.C * m21, self.B * m12 + self.C * m22, self.E)

    def symmetry_key(self) -> tuple[int, int, int, int]:
        """Key identifying grids related by lattice translations and point symmetries."""
        return min(self.transform(m).canonical().poly() for m in self.SYMMETRIES)

    def apply_generator(self, face):
        h = self.face_poly(face)
        t = -2 * self.polar(self.poly(), h)
        return type(self)(*(a + t * b for a, b in zip(self.poly(), h)))

    def flip_amount(self, face) -> int:
        """Change of A when flipping `face` (positive means the grid grows)."""
        return -2 * self.polar(self.poly(), self.face_poly(face))

    def points_upto(self, N: int) -> Iterator[tuple[tuple[int, int], int]]:
        """All lattice points with 0 < curvature <= N (A > 0 only)."""
        if self.A <= 0:
            raise ValueError("unbounded set of points for a flat grid")
        vi, vj = self.vertex()
        # the minimum over the plane is -A/4 for both families
        r = ((N / self.A + 0.25) * self.RADIUS_SCALE ** 2) ** 0.5 + 2
        for i in range(floor(vi - r), floor(vi + r) + 2):
            for j in range(floor(vj - r), floor(vj + r) + 2):
                k = self.curvature((i, j))
                if 0 < k <= N:
                    yield (i, j), k


class SquareGrid(_Grid):
    kind = kind_of(Family.SQUARE)
    NEIGHBORS = SQ_NEIGHBORS
    SYMMETRIES = tuple(((a, 0), (0, b)) for a in (1, -1) for b in (1, -1)) + \
        tuple(((0, a), (b, 0)) for a in (1, -1) for b in (1, -1))
    RADIUS_SCALE = 1.0

    @staticmethod
    def q(i, j):
        return i * i + j * j

    @staticmethod
    def shift_linear(s, u):
        return 2 * s, 2 * u

    def vertex_cell(self):
        return (-self.B) // (2 * self.A), (-self.C) // (2 * self.A)

    def invariant(self) -> int:
        A, B, C, E = self.poly()
        return B * B + C * C - 4 * A * E - A * A

    @staticmethod
    def polar(p, h) -> int:
        A, B, C, E = p
        a, b, c, e = h
        return B * b + C * c - 2 * (A * e + E * a) - A * a

    @staticmethod
    def face_poly(face) -> tuple[int, int, int, int]:
        i0, j0 = face[0], face[1]
        return (1, -(2 * i0 + 1), -(2 * j0 + 1), i0 * (i0 + 1) + j0 * (j0 + 1))

    @staticmethod
    def face_corners(face):
        i0, j0 = face[0], face[1]
        return ((i0, j0), (i0 + 1, j0), (i0, j0 + 1), (i0 + 1, j0 + 1))

    def vertex(self):
        if self.A == 0:
            return (0.0, 0.0)
        return (-self.B / (2 * self.A), -self.C / (2 * self.A))

    def faces(self, radius: int = 2):
        vi, vj = self.vertex()
        ci, cj = floor(vi), floor(vj)
        return [(ci + di, cj + dj) for di in range(-radius, radius + 1) for dj in range(-radius, radius + 1)]

    def window(self, i0=0, j0=0) -> tuple[int, int, int, int]:
        return tuple(self.curvature(p) for p in self.face_corners((i0, j0)))


class TriGrid(_Grid):
    kind = kind_of(Family.TRI)
    NEIGHBORS = TRI_NEIGHBORS
    SYMMETRIES = _tri_symmetries()
    RADIUS_SCALE = 1.155  # i^2 + ij + j^2 >= 3/4 max(|i|, |j|)^2

    @staticmethod
    def q(i, j):
        return i * i + i * j + j * j

    @staticmethod
    def shift_linear(s, u):
        return 2 * s + u, 2 * u + s

    def vertex_cell(self):
        A, B, C = self.A, self.B, self.C
        return (C - 2 * B) // (3 * A), (B - 2 * C) // (3 * A)

    def invariant(self) -> int:
        A, B, C, E = self.poly()
        return 4 * (B * B - B * C + C * C) - 12 * A * E - 3 * A * A

    @staticmethod
    def polar(p, h) -> int:
        A, B, C, E = p
        a, b, c, e = h
        return 4 * B * b - 2 * (B * c + C * b) + 4 * C * c - 6 * (A * e + E * a) - 3 * A * a

    @staticmethod
    def _orient(face) -> int:
        o = face[2] if len(face) > 2 else 0
        if o in (0, "up", "u"):
            return 0
        if o in (1, "down", "d"):
            return 1
        raise ConfigError(f"bad triangle orientation {o!r}")

    @classmethod
    def face_poly(cls, face):
        i0, j0 = face[0], face[1]
        if cls._orient(face) == 0:
            lx, c0 = -1, 0
        else:
            lx, c0 = -2, 1
        return (1, -2 * i0 - j0 + lx, -2 * j0 - i0 + lx,
                i0 * i0 + i0 * j0 + j0 * j0 - lx * (i0 + j0) + c0)

    @classmethod
    def face_corners(cls, face):
        i0, j0 = face[0], face[1]
        if cls._orient(face) == 0:
            return ((i0, j0), (i0 + 1, j0), (i0, j0 + 1))
        return ((i0 + 1, j0), (i0, j0 + 1), (i0 + 1, j0 + 1))

    def vertex(self):
        if self.A == 0:
            return (0.0, 0.0)
        A, B, C = self.A, self.B, self.C
        return ((-2 * B + C) / (3 * A), (-2 * C + B) / (3 * A))

    def faces(self, radius: int = 2):
        vi, vj = self.vertex()
        ci, cj = floor(vi), floor(vj)
        return [(ci + di, cj + dj, o) for di in range(-radius, radius + 1)
                for dj in range(-radius, radius + 1) for o in (0, 1)]

    def window(self):
        """(a, b, c, d): a=(0,0), b=(0,1), c=(1,0), d=(1,-1)."""
        return tuple(self.curvature(p) for p in ((0, 0), (0, 1), (1, 0), (1, -1)))


Config = Union[OctConfig, CubeConfig, SquareGrid, TriGrid]


# ---- construction ------------------------------------------------------------------------

def _check_primitive(vals):
    if _gcd_all(vals) != 1:
        raise ConfigError(f"configuration {tuple(vals)} is not primitive")


def _oct(vals) -> OctConfig:
    a, b, c, d, e, f = vals
    if not (a + f == b + e == c + d):
        raise ConfigError("octahedral relation a+f = b+e = c+d fails")
    if (a + f) % 2:
        raise ConfigError("a+f must be even")
    w = (a + f) // 2
    if w * w - 2 * w * (a + b + c) + a * a + b * b + c * c != 0:
        raise ConfigError("octahedral quadratic relation fails")
    if exact_sqrt(2 * (a * b + a * c + b * c)) is None:
        raise ConfigError("2(ab+ac+bc) is not a perfect square")
    _check_primitive(vals)
    if w < 1:
        raise ConfigError("w must be positive (orientation with one bounding circle)")
    return OctConfig(tuple(vals))


def _cube_relations(v) -> bool:
    a, b, c, d, e, f, g, h = v
    w = a + g
    return (b + h == w and c + e == w and d + f == w and a + c == b + d
            and 3 * (a + c + f + h) ** 2 == 8 * (a * a + c * c + f * f + h * h)
            and exact_sqrt(a * c + b * d) is not None)


def _cube_from_corner(a, b, d, e) -> tuple[int, ...]:
    """Labeling determined by a and its three neighbours b, d, e."""
    c = b + d - a
    f = b + e - a
    h = d + e - a
    w = b + h
    g = w - a
    return (a, b, c, d, e, f, g, h)


def _cube(vals, ordered: bool) -> CubeConfig:
    vals = tuple(vals)
    _check_primitive(vals)
    if ordered:
        if not _cube_relations(vals):
            raise ConfigError("cubic relations fail for this labeling")
        return CubeConfig(vals)
    target = sorted(vals)
    best = None
    for ia, a in enumerate(vals):
        rest = [v for k, v in enumerate(vals) if k != ia]
        for b, e, d in permutations(rest, 3):
            lab = _cube_from_corner(a, b, d, e)
            if sorted(lab) != target or not _cube_relations(lab):
                continue
            key = (a, b, e, d)
            if best is None or key < best[0]:
                best = (key, lab)
    if best is None:
        raise ConfigError(f"no valid cubic labeling of {vals}")
    return CubeConfig(best[1])


def square_from_face(p, q, r, s, sign=1) -> SquareGrid:
    """Grid through the face p=(0,0), q=(1,0), r=(0,1), s=(1,1)."""
    if p + s != q + r:
        raise ConfigError("square face relation p+s = q+r fails")
    X = q * r + p * q + p * r - p * p
    root = exact_sqrt(2 * X)
    if root is None:
        raise ConfigError("2(qr+pq+pr-p^2) is not a perfect square")
    _check_primitive((p, q, r, s))
    A = q + r + _sign_value(sign) * root
    g = SquareGrid(A, q - p - A, r - p - A, p)
    assert g.invariant() == 0
    return g


def square_from_staircase(j, k, l, sign=1) -> SquareGrid:
    """Grid with staircase j=(0,0), k=(1,0), l=(1,-1); m=(2,-1) follows from the sign."""
    disc = (j + l) ** 2 - (k - j) ** 2 - (k - l) ** 2
    root = exact_sqrt(disc)
    if root is None:
        raise ConfigError("staircase radicand is not a perfect square")
    A = j + l + _sign_value(sign) * root
    g = SquareGrid(A, k - j - A, A + k - l, j)
    if g.invariant() != 0:
        raise ConfigError("staircase does not extend to a grid")
    _check_primitive((j, k, l, g.curvature((2, -1))))
    return g


def tri_from_triangle(a, b, c, sign=1) -> TriGrid:
    """Grid with a=(0,0), b=(0,1), c=(1,0); d=(1,-1) follows from the sign."""
    s3 = a * b + b * c + c * a
    if s3 % 3:
        raise ConfigError("ab+bc+ca is not three times a square")
    m = exact_sqrt(s3 // 3)
    if m is None:
        raise ConfigError("ab+bc+ca is not three times a square")
    _check_primitive((a, b, c))
    A = 2 * (a + b + c) + _sign_value(sign) * 6 * m
    g = TriGrid(A, c - a - A, b - a - A, a)
    assert g.invariant() == 0
    return g


def validate_config(kind, values: Sequence[int], sign=1, ordered: bool = False) -> Config:
    """Check the family relations and return the configuration.

    Cubic octuples are treated as unordered unless `ordered` is set; the
    labeling chosen is the valid one minimizing (a, b, e, d), where b, d, e are
    the neighbours of a.
    """
    k = kind_of(kind)
    vals = [int(v) for v in values]
    if len(vals) != k.arity:
        raise ConfigError(f"{k.name} seeds have {k.arity} curvatures, got {len(vals)}")
    if k.family is Family.OCT:
        return _oct(vals)
    if k.family is Family.CUBE:
        return _cube(vals, ordered)
    if k.family is Family.SQUARE:
        return square_from_face(*vals, sign=sign)
    return tri_from_triangle(*vals, sign=sign)


def complete_from_minimal(kind, minimal: Sequence[int], sign=1) -> Config:
    """Complete minimal data to a configuration.

    oct: a triangle (a, b, c); cube: (a, b, c) on a face; square: a staircase
    (j, k, l); tri: a triangle (a, b, c).
    """
    k = kind_of(kind)
    s = _sign_value(sign)
    if len(minimal) != 3:
        raise ConfigError("minimal data has three curvatures")
    a, b, c = (int(v) for v in minimal)
    if k.family is Family.OCT:
        r = exact_sqrt(2 * (a * b + a * c + b * c))
        if r is None:
            raise ConfigError("2(ab+ac+bc) is not a perfect square")
        w = a + b + c + s * r
        return _oct((a, b, c, 2 * w - c, 2 * w - b, 2 * w - a))
    if k.family is Family.CUBE:
        d = a + c - b
        r = exact_sqrt(a * c + b * d)
        if r is None:
            raise ConfigError("ac+bd is not a perfect square")
        w = 2 * (a + c) + 2 * s * r
        vals = (a, b, c, d, w - c, w - d, w - a, w - b)
        return _cube(vals, ordered=True)
    if k.family is Family.SQUARE:
        return square_from_staircase(a, b, c, sign=s)
    return tri_from_triangle(a, b, c, sign=s)


# ---- generators ----------------------------------------------------------------------------

def _oct_face(face) -> tuple[int, int, int]:
    if isinstance(face, int):
        if not 0 <= face < 8:
            raise ConfigError(f"octahedron face index {face} out of range")
        return OCT_FACES[face]
    ids = tuple(sorted(LETTERS.index(x) if isinstance(x, str) else x for x in face))
    if ids not in OCT_FACES:
        raise ConfigError(f"{face} is not an octahedron face")
    return ids


def _cube_face(face) -> tuple[int, int, int, int]:
    if isinstance(face, int):
        if not 0 <= face < 6:
            raise ConfigError(f"cube face index {face} out of range")
        return CUBE_FACES[face]
    ids = {LETTERS.index(x) if isinstance(x, str) else x for x in face}
    for f in CUBE_FACES:
        if set(f) == ids:
            return f
    raise ConfigError(f"{face} is not a cube face")


def oct_flip(vals, face) -> tuple[int, ...]:
    x, y, z = face
    s = vals[0] + vals[5]
    w = s // 2 if isinstance(s, int) else s / 2  # opposite sums are even for integral tuples
    w2 = 2 * (vals[x] + vals[y] + vals[z]) - w
    out = list(vals)
    for i in face:
        out[OCT_OPP[i]] = 2 * w2 - vals[i]
    return tuple(out)


def cube_flip(vals, face) -> tuple[int, ...]:
    p, q, r, s = face
    w = vals[0] + vals[6]
    w2 = 4 * (vals[p] + vals[r]) - w
    out = list(vals)
    for i in face:
        out[CUBE_OPP[i]] = w2 - vals[i]
    return tuple(out)


def apply_generator(config: Config, face) -> Config:
    """Reflect through the dual circle of `face`; the face's circles stay fixed."""
    if isinstance(config, OctConfig):
        return OctConfig(oct_flip(config.values, _oct_face(face)))
    if isinstance(config, CubeConfig):
        return CubeConfig(cube_flip(config.values, _cube_face(face)))
    if isinstance(config, (SquareGrid, TriGrid)):
        return config.apply_generator(tuple(face))
    raise TypeError(f"not a configuration: {config!r}")


def generator_ids(config: Config) -> list:
    if isinstance(config, OctConfig):
        return list(range(8))
    if isinstance(config, CubeConfig):
        return list(range(6))
    return config.faces(1)


# ---- modular types -------------------------------------------------------------------------

@dataclass(frozen=True)
class ModularType:
    kind: PackingKind
    label: str
    residues: frozenset
    modulus: int

    def admits(self, n: int) -> bool:
        return n % self.modulus in self.residues


def _types(mod, labels):
    out = {}
    for lab in labels:
        if lab == "full":
            out[lab] = frozenset(range(mod))
        else:
            out[lab] = frozenset(int(t) for t in lab.strip("()").split(","))
    return out


TYPES = {
    Family.OCT: _types(8, ["(0,1,2)", "(0,3,6)", "(4,5,6)", "(2,4,7)"]),
    Family.CUBE: _types(4, ["(0,1,2)", "(0,2,3)"]),
    Family.SQUARE: _types(8, ["(1)", "(5)", "(3,7)", "full"]),
    Family.TRI: _types(12, ["(1)", "(7)", "(3,11)", "(5,9)", "(2,5,8,11)", "(0,1,3,4,6,7,9,10)"]),
}


def type_by_label(kind, label: str) -> ModularType:
    k = kind_of(kind)
    table = TYPES[k.family]
    key = label.replace(" ", "")
    if key not in table:
        raise ConfigError(f"unknown {k.name} type {label!r}")
    return ModularType(k, key, table[key], k.modulus)


def residues_of(config: Config, modulus: int | None = None) -> frozenset:
    """Residues of all curvatures of the configuration (a full period for grids)."""
    mod = modulus or config.kind.modulus
    if isinstance(config, (OctConfig, CubeConfig)):
        return frozenset(v % mod for v in config.values)
    per = 24 if isinstance(config, TriGrid) else 16
    return frozenset(config.curvature((i, j)) % mod for i in range(per) for j in range(per))


def modular_type(config: Config) -> ModularType:
    k = config.kind
    res = residues_of(config)
    for label, r in TYPES[k.family].items():
        if r == res:
            return ModularType(k, label, r, k.modulus)
    raise ConfigError(f"residues {sorted(res)} mod {k.modulus} match no {k.name} type")


# ---- colorings ---------------------------------------------------------------------------

def color_of(config: Config, cid) -> int:
    """Colour class of a circle position.

    oct: diagonal pair index (3 colours); cube: bipartition class; tri:
    (i - j) mod 3.  Positions are preserved by generators, so the colouring is
    global on the packing.
    """
    if isinstance(config, OctConfig):
        i = config._idx(cid)
        return min(i, OCT_OPP[i])
    if isinstance(config, CubeConfig):
        return CUBE_CLASS[config._idx(cid)]
    if isinstance(config, TriGrid):
        return (cid[0] - cid[1]) % 3
    raise ConfigError("the square family has no colouring")


def coloring(kind, config: Config) -> dict:
    k = kind_of(kind)
    if k.family is Family.SQUARE:
        raise ConfigError("the square family has no colouring")
    ids = config.circle_ids() if not isinstance(config, TriGrid) else config.circle_ids(2)
    return {cid: color_of(config, cid) for cid in ids}


def n_colors(family: Family) -> int:
    return {Family.OCT: 3, Family.CUBE: 2, Family.TRI: 3, Family.SQUARE: 1}[family]
