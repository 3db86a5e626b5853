"""Tangency quadratic forms, simultaneous tangency and coprime insertion.

For a circle of curvature a, every tangent circle has curvature Q(x, y) - a
for coprime (x, y) with y >= 0, where Q is one of (at most) two binary
quadratic forms selected by a congruence condition on (x, y).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator

from .configs import (
    ConfigError,
    CubeConfig,
    OctConfig,
    OCT_FACES,
    OCT_OPP,
    CUBE_FACES,
    SquareGrid,
    TriGrid,
    apply_generator,
    automorphisms,
)
from .kinds import Family


@dataclass(frozen=True)
class QuadForm:
    A: Fraction
    B: Fraction
    C: Fraction

    @classmethod
    def of(cls, A, B, C) -> "QuadForm":
        return cls(Fraction(A), Fraction(B), Fraction(C))

    def __call__(self, x: int, y: int) -> Fraction:
        return self.A * x * x + self.B * x * y + self.C * y * y

    def disc(self) -> Fraction:
        return self.B * self.B - 4 * self.A * self.C

    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.A, self.B, self.C)


def in_domain(family: Family, form: str, x: int, y: int) -> bool:
    if family is Family.CUBE:
        return form == ""
    if family is Family.OCT:
        alpha = x % 2 == 1
    elif family is Family.SQUARE:
        alpha = (x * y) % 2 == 1
    else:
        alpha = y % 3 != 0
    return alpha == (form == "alpha")


def form_name(family: Family, x: int, y: int) -> str:
    if family is Family.CUBE:
        return ""
    return "alpha" if in_domain(family, "alpha", x, y) else "beta"


@dataclass(frozen=True)
class TangentForms:
    family: Family
    a: int
    forms: dict  # name -> QuadForm; "" for the single cubic form
    neighbors: dict  # local role letter -> circle id

    def form_for(self, x: int, y: int) -> tuple[str, QuadForm]:
        name = form_name(self.family, x, y)
        return name, self.forms[name]

    def represent(self, x: int, y: int) -> tuple[str, int]:
        """(form name, Q(x, y)) for the form whose domain contains (x, y)."""
        name, q = self.form_for(x, y)
        v = q(x, y)
        if v.denominator != 1:
            raise ArithmeticError(f"non-integral value {v} of {name} form at {(x, y)}")
        return name, v.numerator

    def tangent_curvature(self, x: int, y: int) -> int:
        return self.represent(x, y)[1] - self.a


def coprime_args(bound: int) -> Iterator[tuple[int, int]]:
    """Coprime (x, y), y >= 0, (1, 0) for y = 0, by (max(|x|, y), |x|, y, x)."""
    yield (1, 0)
    for m in range(1, bound + 1):
        pts = []
        for y in range(0, m + 1):
            for x in (-m, m) if y < m else range(-m, m + 1):
                if y == 0 or gcd(x, y) != 1:
                    continue
                pts.append((abs(x), y, x))
        for ax, y, x in sorted(pts):
            yield (x, y)


# ---- local neighbourhoods ---------------------------------------------------------------

def local_neighbors(config, cid) -> dict:
    """Role letter -> circle id, in the shape the tangency forms are written for."""
    if isinstance(config, OctConfig):
        i = config._idx(cid)
        nbrs = config.neighbors(i)
        b = nbrs[0]
        c = next(j for j in nbrs if j not in (b, OCT_OPP[b]))
        return {"b": b, "c": c, "d": OCT_OPP[c], "e": OCT_OPP[b]}
    if isinstance(config, CubeConfig):
        b, d, e = config.neighbors(cid)
        return {"b": b, "d": d, "e": e}
    i, j = cid
    if isinstance(config, SquareGrid):
        return {"b": (i - 1, j), "d": (i + 1, j), "c": (i, j + 1), "e": (i, j - 1)}
    if isinstance(config, TriGrid):
        return {"b": (i, j + 1), "c": (i + 1, j), "d": (i + 1, j - 1)}
    raise TypeError(f"not a configuration: {config!r}")


def tangent_forms(config, cid) -> TangentForms:
    nb = local_neighbors(config, cid)
    k = {r: config.curvature(c) for r, c in nb.items()}
    a = config.curvature(cid)
    fam = config.kind.family
    if fam is Family.OCT:
        b, c, d = k["b"], k["c"], k["d"]
        qa = QuadForm.of(a + c, -2 * a - 2 * b - c + d, 2 * (a + b))
        qb = QuadForm.of(Fraction(a + c, 2), Fraction(-2 * a - 2 * b - c + d, 2), a + b)
        forms = {"alpha": qa, "beta": qb}
    elif fam is Family.CUBE:
        b, d, e = k["b"], k["d"], k["e"]
        forms = {"": QuadForm.of(a + b, -(a + b + d - e), a + d)}
    elif fam is Family.SQUARE:
        b, c, d, e = k["b"], k["c"], k["d"], k["e"]
        qa = QuadForm.of(Fraction(a + b, 2), Fraction(c - e, 2), Fraction(a + d, 2))
        qb = QuadForm.of(a + b, c - e, a + d)
        forms = {"alpha": qa, "beta": qb}
    else:
        b, c, d = k["b"], k["c"], k["d"]
        mid = -3 * a - b - 3 * c + d
        qa = QuadForm.of(3 * (a + b), mid, a + c)
        qb = QuadForm.of(a + b, Fraction(mid, 3), Fraction(a + c, 3))
        forms = {"alpha": qa, "beta": qb}
    return TangentForms(fam, a, forms, nb)


# Ford parameters at which each local neighbour appears
NEIGHBOR_ARGS = {
    Family.OCT: {"c": (1, 0), "d": (1, 1), "b": (0, 1), "e": (2, 1)},
    Family.CUBE: {"b": (1, 0), "d": (0, 1), "e": (1, 1)},
    Family.SQUARE: {"b": (1, 0), "d": (0, 1), "c": (1, 1), "e": (-1, 1)},
    Family.TRI: {"b": (1, 0), "c": (0, 1), "d": (1, 3)},
}

EXPECTED_DISC = {
    Family.OCT: {"alpha": -8, "beta": -2},
    Family.CUBE: {"": -8},
    Family.SQUARE: {"alpha": -4, "beta": -16},
    Family.TRI: {"alpha": -12, "beta": Fraction(-4, 3)},
}


def neighbor_form(config, cid, nid) -> str:
    """Form class ('alpha'/'beta', '' for cubes) of a neighbour in the local labeling."""
    nb = local_neighbors(config, cid)
    for role, c in nb.items():
        if c == nid:
            return form_name(config.kind.family, *NEIGHBOR_ARGS[config.kind.family][role])
    raise ConfigError(f"{nid} is not a neighbour of {cid}")


# ---- simultaneous tangency -------------------------------------------------------------

def _relabel_pair(config, pair):
    """Relabel a tuple configuration so that the pair sits at positions (0, 1)."""
    i, j = (config._idx(p) for p in pair)
    for perm in automorphisms(config.kind.family):
        if perm[0] == i and perm[1] == j:
            return config.relabel(perm), perm
    raise ConfigError(f"circles {pair} are not tangent")


def _grid_frame(config, pair):
    (i0, j0), (i1, j1) = pair
    u = (i1 - i0, j1 - j0)
    if u not in config.NEIGHBORS:
        raise ConfigError(f"circles {pair} are not tangent")
    return u


def simultaneous_tangent(config, pair, n: int):
    """n-th curvature(s) tangent to both circles of `pair`.

    oct/tri: a single curvature.  cube/square: the pair (l, k) forming a square
    of tangencies with (a, b), l tangent to a and k tangent to b.  n = 0 and
    n = 1 give the common neighbours present in `config`.
    """
    if isinstance(config, OctConfig):
        cfg, _ = _relabel_pair(config, pair)
        a, b, c, d = cfg.values[:4]
        return c + (-2 * a - 2 * b - c + d) * n + 2 * (a + b) * n * n
    if isinstance(config, CubeConfig):
        cfg, _ = _relabel_pair(config, pair)
        a, b, c, d, e, f = cfg.values[:6]
        t = n * n - n
        return (a * t + b * t + d * (1 - n) + e * n, a * t + b * t + c * (1 - n) + f * n)
    p, q = pair
    u = _grid_frame(config, pair)
    a, b = config.curvature(p), config.curvature(q)
    if isinstance(config, SquareGrid):
        v = (-u[1], u[0])
        c = config.curvature((p[0] + v[0], p[1] + v[1]))
        d = config.curvature((q[0] + v[0], q[1] + v[1]))
        e = config.curvature((p[0] - v[0], p[1] - v[1]))
        f = config.curvature((q[0] - v[0], q[1] - v[1]))
        t = 2 * n * n - 2 * n
        return (a * t + b * t + c * (1 - n) + e * n, a * t + b * t + d * (1 - n) + f * n)
    bb, dd = _tri_common(p, u)
    t = 3 * n * n - 3 * n
    return a * t + b * t + config.curvature(bb) * (1 - n) + config.curvature(dd) * n


def _tri_common(p, u):
    r60 = (-u[1], u[0] + u[1])
    rm60 = (u[0] + u[1], -u[0])
    return (p[0] + r60[0], p[1] + r60[1]), (p[0] + rm60[0], p[1] + rm60[1])


@dataclass(frozen=True)
class CommonNeighbor:
    n: int
    config: object  # state in which the circles are adjacent to the pair
    pair: tuple  # ids of the pair in that state
    ids: tuple  # ids of the inserted circle(s) in that state (l, k order for squares of tangency)

    def curvatures(self) -> tuple[int, ...]:
        return tuple(self.config.curvature(c) for c in self.ids)


def _slots(config, pair):
    """The two faces through the pair and their remaining slots, n = 0 face first."""
    if isinstance(config, OctConfig):
        i, j = (config._idx(p) for p in pair)
        cfg, perm = _relabel_pair(config, pair)
        c, d = perm[2], perm[3]
        f0 = next(f for f in OCT_FACES if set(f) == {i, j, c})
        f1 = next(f for f in OCT_FACES if set(f) == {i, j, d})
        return (f0, (c,)), (f1, (d,))
    if isinstance(config, CubeConfig):
        i, j = (config._idx(p) for p in pair)
        cfg, perm = _relabel_pair(config, pair)
        # (l, k): l tangent to a, k tangent to b
        s0, s1 = (perm[3], perm[2]), (perm[4], perm[5])
        f0 = next(f for f in CUBE_FACES if set(f) == {i, j, *s0})
        f1 = next(f for f in CUBE_FACES if set(f) == {i, j, *s1})
        return (f0, s0), (f1, s1)
    p, q = pair
    u = _grid_frame(config, pair)
    if isinstance(config, SquareGrid):
        v = (-u[1], u[0])
        s0 = ((p[0] + v[0], p[1] + v[1]), (q[0] + v[0], q[1] + v[1]))
        s1 = ((p[0] - v[0], p[1] - v[1]), (q[0] - v[0], q[1] - v[1]))
        faces = []
        for s in (s0, s1):
            pts = [p, q, *s]
            faces.append((min(x for x, _ in pts), min(y for _, y in pts)))
        return (faces[0], s0), (faces[1], s1)
    b, d = _tri_common(p, u)
    faces = []
    for s in (b, d):
        faces.append(_tri_face_of({p, q, s}))
    return (faces[0], (b,)), (faces[1], (d,))


def _tri_face_of(pts):
    for (i, j) in pts:
        for o, corners in ((0, {(i, j), (i + 1, j), (i, j + 1)}), (1, {(i - 1, j), (i, j - 1), (i, j)})):
            if corners == pts:
                return (i, j, 0) if o == 0 else (i - 1, j - 1, 1)
    raise ConfigError(f"{pts} is not a triangle")


def common_neighbor(config, pair, n: int) -> CommonNeighbor:
    """Realize the n-th common neighbour by alternately flipping the two faces on the pair."""
    (f0, s0), (f1, s1) = _slots(config, pair)
    # slot contents: which n sits in s0/s1 right now
    hold = {0: 0, 1: 1}  # slot index -> n
    cfg = config
    faces = (f0, f1)
    slots = (s0, s1)
    while n not in hold.values():
        if n > max(hold.values()):
            keep = max(hold, key=hold.get)
            cfg = apply_generator(cfg, faces[keep])
            hold[1 - keep] = hold[keep] + 1
        else:
            keep = min(hold, key=hold.get)
            cfg = apply_generator(cfg, faces[keep])
            hold[1 - keep] = hold[keep] - 1
    slot = next(s for s, m in hold.items() if m == n)
    return CommonNeighbor(n, cfg, tuple(pair), slots[slot])


def _n_order(bound: int) -> Iterator[int]:
    yield 0
    for k in range(1, bound + 1):
        yield k
        yield 1 - k


@dataclass(frozen=True)
class Insertion:
    n: int
    curvatures: tuple[int, ...]
    neighbor: CommonNeighbor


def _curv_tuple(v) -> tuple[int, ...]:
    return v if isinstance(v, tuple) else (v,)


def _insert_ok(family, a, b, ks, mode) -> bool:
    if any(k == 0 for k in ks):
        return False
    if family in (Family.OCT, Family.TRI):
        (k,) = ks
        g = 3 if family is Family.TRI else 1
        if mode == "both":
            return gcd(a, k) == 1 and gcd(b, k) == 1
        if mode == "lemma":
            if family is Family.TRI:
                return g % gcd(a, k) == 0 and g % gcd(b, k) == 0
            odd = a if a % 2 else b
            return gcd(odd, k) == 1
        raise ValueError(mode)
    l, k = ks
    lim = 1 if family is Family.CUBE else 4
    if mode == "both":
        return gcd(l, a) == 1 and gcd(k, b) == 1 and gcd(k, l) == 1
    g = gcd(k, l)
    pow2 = g & (g - 1) == 0
    if family is Family.CUBE:
        return gcd(l, a) == 1 and gcd(k, b) == 1 and pow2
    return lim % gcd(l, a) == 0 and lim % gcd(k, b) == 0 and 8 % g == 0


def coprime_insert(config, pair, bound: int = 500, mode: str = "both") -> Insertion:
    """Smallest-|n| common neighbour(s) meeting the gcd conditions.

    mode "both": every new link coprime (k coprime to a and b; for squares of
    tangency gcd(l, a) = gcd(k, b) = gcd(k, l) = 1).  mode "lemma": the
    weaker guarantee that always exists (oct: k coprime to the odd end;
    cube: gcd(k, l) a power of 2; square: divisors of 4 and 8; tri: of 3).
    """
    fam = config.kind.family
    p, q = pair
    a, b = config.curvature(p), config.curvature(q)
    for n in _n_order(bound):
        ks = _curv_tuple(simultaneous_tangent(config, pair, n))
        if _insert_ok(fam, a, b, ks, mode):
            cn = common_neighbor(config, pair, n)
            if cn.curvatures() != ks:
                raise AssertionError("simultaneous tangency formula disagrees with the generator walk")
            return Insertion(n, ks, cn)
    raise LookupError(f"no insertion for {pair} with |n| <= {bound} in mode {mode}")
