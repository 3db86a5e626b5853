"""Quadratic invariants built from Kronecker symbols of tangent curvatures."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Optional

from .arith import half_if_2mod4, kronecker
from .configs import (
    CubeConfig,
    OctConfig,
    SquareGrid,
    TriGrid,
    apply_generator,
    color_of,
    generator_ids,
    modular_type,
)
from .forms import QuadForm, coprime_args, tangent_forms
from .kinds import Family

a_prime = half_if_2mod4


class NotApplicable(ValueError):
    """The packing type has no invariant of the requested kind."""


@dataclass(frozen=True)
class Chi2Value:
    value: Optional[int]  # +1, -1, or None when not applicable
    label: str = ""
    witnesses: tuple = field(default=(), compare=False)

    @property
    def applicable(self) -> bool:
        return self.value is not None

    def __str__(self):
        return "n/a" if self.value is None else f"{self.value:+d}"


@dataclass(frozen=True)
class RhoWitness:
    circle: object
    a: int
    x: int
    y: int
    form: str
    rho: int


# types with a per-circle symbol, and those whose per-circle symbol is a packing invariant
CIRCLE_TYPES = {
    Family.OCT: {"(0,1,2)", "(2,4,7)"},
    Family.CUBE: {"(0,1,2)", "(0,2,3)"},
    Family.SQUARE: {"(1)", "full"},
    Family.TRI: {"(1)", "(3,11)"},
}
PACKING_TYPES = {
    Family.OCT: {"(0,1,2)", "(2,4,7)"},
    Family.CUBE: {"(0,1,2)"},
    Family.SQUARE: {"(1)", "full"},
    Family.TRI: {"(1)", "(3,11)"},
}


def rho_witnesses(config, cid, bound: int = 60) -> Iterator[RhoWitness]:
    """Represented values rho = Q(x, y) coprime to a, in a fixed deterministic order.

    Arguments run over coprime (x, y), y >= 0, ordered by
    (max(|x|, y), |x|, y, x); each argument lies in exactly one form's domain.
    """
    tf = tangent_forms(config, cid)
    a = tf.a
    if a == 0:
        raise ValueError("circle of curvature 0 has no witness")
    for x, y in coprime_args(bound):
        name, rho = tf.represent(x, y)
        if rho != 0 and gcd(rho, a) == 1:
            yield RhoWitness(cid, a, x, y, name, rho)


def find_rho(config, cid, bound: int = 200) -> RhoWitness:
    for w in rho_witnesses(config, cid, bound):
        return w
    raise LookupError(f"no witness for circle {cid} with arguments up to {bound}")


def chi2_from_rho(family: Family, label: str, a: int, rho: int) -> int:
    """Per-circle symbol for curvature a from a witness rho (piecewise by a)."""
    if gcd(a, rho) != 1:
        raise ValueError("rho must be coprime to a")
    if family is Family.OCT:
        if label not in CIRCLE_TYPES[family]:
            raise NotApplicable(f"oct type {label} has only a pair symbol")
        r = a % 8
        if r == 2:
            return kronecker(rho, a // 2)
        if r == 4:
            return kronecker(-rho, a)
        return kronecker(rho, a)
    if family is Family.CUBE:
        r = a % 4
        if label == "(0,1,2)":
            if r == 2:
                return kronecker(-rho, a // 2)
            return kronecker(rho, a)
        if label == "(0,2,3)":
            if r == 3:
                return kronecker(rho, a)
            if r == 0:
                return -kronecker(-rho, a)
            return -kronecker(rho, a // 2)
        raise NotApplicable(label)
    if family is Family.SQUARE:
        if label not in CIRCLE_TYPES[family]:
            raise NotApplicable(f"square type {label} has no per-circle symbol")
        r = a % 8
        k = kronecker(rho, a)
        if r in (0, 1, 4):
            return k
        if r in (2, 6, 7):
            return -k
        if r == 3:
            return k if rho % 2 == 0 else -k
        return -k if rho % 2 == 0 else k
    if label == "(1)":
        return kronecker(rho, a)
    if label == "(3,11)":
        if a % 12 == 11:
            return kronecker(rho, a)
        return -kronecker(rho, a)
    raise NotApplicable(f"tri type {label} has no per-circle symbol")


def chi2_circle(config, cid, witness: RhoWitness | None = None) -> int:
    mt = modular_type(config)
    fam = config.kind.family
    if mt.label not in CIRCLE_TYPES[fam]:
        raise NotApplicable(f"{fam.value} type {mt.label} has no per-circle symbol")
    w = witness or find_rho(config, cid)
    return chi2_from_rho(fam, mt.label, w.a, w.rho)


# ---- sampling --------------------------------------------------------------------------

def _circles(config, radius: int = 1):
    if isinstance(config, (OctConfig, CubeConfig)):
        return list(config.circle_ids())
    return config.circle_ids(radius)


def random_states(config, count: int, rng: random.Random, max_depth: int = 12) -> Iterator:
    """`count` states reached by random generator words of length <= max_depth."""
    for _ in range(count):
        cfg = config
        for _ in range(rng.randint(0, max_depth)):
            cfg = apply_generator(cfg, rng.choice(generator_ids(cfg)))
        yield cfg


def tangent_coprime_pairs(config, radius: int = 1, positive: bool = True):
    pairs = config.tangent_pairs() if isinstance(config, (OctConfig, CubeConfig)) else config.tangent_pairs(radius)
    for p, q in pairs:
        a, b = config.curvature(p), config.curvature(q)
        if a == 0 or b == 0 or gcd(a, b) != 1:
            continue
        if positive and (a < 0 or b < 0):
            continue
        yield p, q


def chi2_packing(config, samples: int = 64, rng: random.Random | None = None,
                 max_depth: int = 10) -> Chi2Value:
    """Packing invariant from the seed circles and `samples` random states.

    Every nonzero circle visited must give the same symbol; a disagreement
    raises AssertionError (the value is proved constant, so that is a bug).
    """
    mt = modular_type(config)
    fam = config.kind.family
    if mt.label not in PACKING_TYPES[fam]:
        return Chi2Value(None, mt.label)
    rng = rng or random.Random(0)
    seen = None
    wits = []
    states = [config, *random_states(config, samples, rng, max_depth)]
    for st in states:
        for cid in _circles(st):
            a = st.curvature(cid)
            if a == 0:
                continue
            w = find_rho(st, cid)
            v = chi2_from_rho(fam, mt.label, a, w.rho)
            if seen is None:
                seen = v
            elif v != seen:
                raise AssertionError(f"chi2 disagrees at curvature {a}: {v} vs {seen}")
            if len(wits) < 8:
                wits.append(w)
    if seen is None:
        raise AssertionError("no nonzero circle visited")
    return Chi2Value(seen, mt.label, tuple(wits))


# ---- pair symbols ----------------------------------------------------------------------------

def partial_symbol(config, pair) -> int:
    """Pair-level symbol chi2(C1, C2) for tangent coprime circles C1, C2."""
    p, q = pair
    if q not in config.neighbors(p):
        raise ValueError(f"{pair} is not a tangent pair")
    a, b = config.curvature(p), config.curvature(q)
    if a == 0 or b == 0 or gcd(a, b) != 1:
        raise ValueError("pair symbol needs coprime nonzero curvatures")
    fam = config.kind.family
    label = modular_type(config).label
    if fam is Family.OCT:
        if label == "(0,3,6)":
            r = a % 8
            if r == 6:
                return kronecker(a + b, a // 2)
            if r == 0:
                return kronecker(-(a + b), a)
            return kronecker(a + b, a)
        if label == "(4,5,6)":
            return kronecker(a + b, a)
        return chi2_from_rho(fam, label, a, a + b)
    if fam is Family.CUBE:
        return chi2_from_rho(fam, label, a, a + b)
    if fam is Family.SQUARE:
        if label in CIRCLE_TYPES[fam]:
            return chi2_from_rho(fam, label, a, a + b)
        return kronecker(a, b)
    if label in CIRCLE_TYPES[fam]:
        return chi2_from_rho(fam, label, a, a + b)
    if label in ("(7)", "(5,9)"):
        return kronecker(b, a)
    return kronecker(b, a_prime(a))


def oct_partial_colors(config) -> dict:
    """Colour class per position: 'yellow' for the odd pair, 'red'/'blue' for the even pairs.

    Red is the even class whose yellow pairs have symbol +1 (blue gets -1); if
    no coprime yellow pair is visible in this state the classes are returned
    as 'even0'/'even1'.
    """
    cls = {i: color_of(config, i) for i in config.circle_ids()}
    yellow = next(c for i, c in cls.items() if config.values[i] % 2)
    evens = sorted({c for c in cls.values() if c != yellow})
    val = {}
    for i in config.circle_ids():
        if cls[i] != yellow:
            continue
        for j in config.neighbors(i):
            if cls[j] == yellow or gcd(config.values[i], config.values[j]) != 1:
                continue
            val.setdefault(cls[j], partial_symbol(config, (i, j)))
    names = {yellow: "yellow"}
    if val:
        c0, v0 = next(iter(val.items()))
        other = evens[1] if evens[0] == c0 else evens[0]
        names[c0] = "red" if v0 == 1 else "blue"
        names[other] = "blue" if v0 == 1 else "red"
    else:
        names[evens[0]], names[evens[1]] = "even0", "even1"
    return {i: names[cls[i]] for i in config.circle_ids()}


# ---- quadratic-form symbol constancy -------------------------------------------------------------

def _k_rule(a: int) -> int:
    t = (a & -a).bit_length() - 1 if a else 0
    return {1: 4, 3: 2}.get(t, 0)


@dataclass(frozen=True)
class ConstancyReport:
    a: int
    value: Optional[int]
    constant: bool
    checked: int


def form_symbol_constancy(Q: QuadForm, a: int, bound: int = 30) -> ConstancyReport:
    """Check (rho/a) over values rho of Q coprime to a, |x|, |y| <= bound.

    The hypothesis 2^k a | disc(Q) (k = 4 if 2 || a, k = 2 if 2^3 || a, else 0)
    is enforced; inputs violating it are rejected.
    """
    d = Q.disc()
    if d.denominator != 1 or any(c.denominator != 1 for c in Q.coefficients()):
        raise ValueError("form must have integer coefficients")
    if a == 0 or d.numerator % ((1 << _k_rule(a)) * a) != 0:
        raise ValueError(f"2^k a does not divide disc(Q) = {d} for a = {a}")
    seen = set()
    n = 0
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            rho = int(Q(x, y))
            if rho == 0 or gcd(rho, a) != 1:
                continue
            n += 1
            seen.add(kronecker(rho, a))
    const = len(seen) <= 1
    return ConstancyReport(a, next(iter(seen)) if len(seen) == 1 else None, const, n)


# ---- arrow patterns ---------------------------------------------------------------------------

GRID_DIRECTIONS = {Family.SQUARE: ((1, 0), (0, 1)), Family.TRI: ((1, 0), (0, 1), (-1, 1))}


def arrow_classes(config, period: int, radius: int | None = None, skip_mod4: bool = False) -> dict:
    """Pair symbols of the grid's tangent coprime pairs, by (direction, i mod P, j mod P).

    A consistent arrow pattern has one symbol per class.  With `skip_mod4`
    pairs starting at a curvature divisible by 4 are left out (their symbol
    depends on the factorization, not on a congruence).
    """
    fam = config.kind.family
    if fam not in GRID_DIRECTIONS:
        raise ValueError("arrow patterns are defined for grid families")
    r = 2 * period if radius is None else radius
    out: dict = {}
    for i in range(-r, r):
        for j in range(-r, r):
            p = (i, j)
            a = config.curvature(p)
            if a == 0 or (skip_mod4 and a % 4 == 0):
                continue
            for d in GRID_DIRECTIONS[fam]:
                q = (i + d[0], j + d[1])
                b = config.curvature(q)
                if b == 0 or gcd(a, b) != 1:
                    continue
                out.setdefault((d, i % period, j % period), set()).add(partial_symbol(config, (p, q)))
    return out
