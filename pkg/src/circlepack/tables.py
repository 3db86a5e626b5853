"""Reference sporadic-integer data for the documented seeds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .kinds import Family


@dataclass(frozen=True)
class TableRow:
    family: Family
    seed: tuple
    type_label: str
    chi2: Optional[int]  # None where the type has no invariant
    N: int
    sporadic_max: Optional[int]  # None when the sporadic set is empty
    sporadic_count: int

    @property
    def desk_scale(self) -> bool:
        return self.N <= 10 ** 6


def _rows(fam, data):
    return [TableRow(fam, *r) for r in data]


ROWS = (
    _rows(Family.OCT, [
        ((-7, 16, 16, 18, 18, 41), "(0,1,2)", 1, 12 * 10 ** 7, 64037994, 23123),
        ((-6, 10, 17, 17, 24, 40), "(0,1,2)", -1, 8 * 10 ** 7, 18792216, 11709),
        ((-2, 3, 6, 8, 11, 16), "(0,3,6)", None, 10 ** 6, 116523, 125),
        ((-5, 8, 14, 16, 22, 35), "(0,3,6)", None, 4 * 10 ** 6, 1235310, 785),
        ((-1, 2, 2, 4, 4, 7), "(2,4,7)", 1, 10 ** 6, 34716, 31),
        ((-4, 7, 10, 12, 15, 26), "(2,4,7)", -1, 4 * 10 ** 7, 314388, 339),
        ((-2, 4, 5, 5, 6, 12), "(4,5,6)", None, 10 ** 6, 138798, 95),
        ((-4, 6, 13, 13, 20, 30), "(4,5,6)", None, 8 * 10 ** 7, 6631038, 2750),
    ])
    + _rows(Family.CUBE, [
        ((-7, 16, 18, 25, 41, 48, 50, 73), "(0,1,2)", 1, 10 ** 6, 345414, 1890),
        ((-2, 5, 5, 6, 12, 13, 13, 20), "(0,1,2)", -1, 10 ** 6, 12336, 118),
        ((-1, 2, 3, 4, 6, 7, 8, 11), "(0,2,3)", None, 10 ** 6, 312, 7),
        ((-2, 3, 10, 11, 15, 16, 23, 28), "(0,2,3)", None, 10 ** 6, 17874, 168),
    ])
    + _rows(Family.SQUARE, [
        ((1, 1, 1, 1), "(1)", 1, 10 ** 5, None, 0),
        ((-7, 17, 17, 41), "(1)", -1, 10 ** 5, 2665, 4),
        ((-3, 5, 13, 21), "(5)", None, 10 ** 5, None, 0),
        ((-27, 37, 173, 237), "(5)", None, 10 ** 5, 30629, 201),
        ((-3, 5, 12, 20), "full", 1, 10 ** 5, 7297, 390),
        ((-1, 2, 3, 6), "full", -1, 10 ** 5, 154, 10),
        ((-1, 3, 3, 7), "(3,7)", None, 10 ** 5, None, 0),
        ((-5, 7, 31, 43), "(3,7)", None, 10 ** 5, 3827, 53),
    ])
    + _rows(Family.TRI, [
        ((1, 1, 1), "(1)", 1, 10 ** 5, None, 0),
        ((-11, 13, 73), "(1)", -1, 10 ** 5, 27157, 45),
        ((-5, 7, 19), "(7)", None, 10 ** 5, 175, 1),
        ((-17, 31, 43), "(7)", None, 10 ** 5, 4699, 17),
        ((-1, 3, 3), "(3,11)", 1, 10 ** 5, 1127, 1),
        ((-9, 15, 23), "(3,11)", -1, 10 ** 5, 15275, 39),
        ((-3, 5, 9), "(5,9)", None, 10 ** 5, None, 0),
        ((-7, 9, 33), "(5,9)", None, 10 ** 5, 67301, 159),
        ((-2, 3, 6), "(0,1,3,4,6,7,9,10)", None, 10 ** 5, 15106, 153),
        ((-3, 6, 7), "(0,1,3,4,6,7,9,10)", None, 10 ** 5, 7993, 97),
        ((-1, 2, 2), "(2,5,8,11)", None, 10 ** 5, None, 0),
        ((-4, 5, 20), "(2,5,8,11)", None, 10 ** 5, 33923, 193),
    ])
)


def rows_for(family) -> list:
    fam = family if isinstance(family, Family) else Family(family)
    return [r for r in ROWS if r.family is fam]


def find_row(family, seed) -> Optional[TableRow]:
    fam = family if isinstance(family, Family) else Family(family)
    for r in ROWS:
        if r.family is fam and tuple(r.seed) == tuple(seed):
            return r
    return None
