from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Family(Enum):
    OCT = "oct"
    CUBE = "cube"
    SQUARE = "square"
    TRI = "tri"


@dataclass(frozen=True)
class PackingKind:
    family: Family
    modulus: int
    field: int
    arity: int  # numbers in a seed
    generators: str

    @property
    def name(self) -> str:
        return self.family.value


KINDS = {
    Family.OCT: PackingKind(Family.OCT, 8, 2, 6, "8 octahedron faces"),
    Family.CUBE: PackingKind(Family.CUBE, 4, 2, 8, "6 cube faces"),
    Family.SQUARE: PackingKind(Family.SQUARE, 8, 1, 4, "one per square face of the grid"),
    Family.TRI: PackingKind(Family.TRI, 12, 3, 3, "one per triangular face of the grid"),
}


def kind_of(k) -> PackingKind:
    if isinstance(k, PackingKind):
        return k
    if isinstance(k, Family):
        return KINDS[k]
    if isinstance(k, str):
        try:
            return KINDS[Family(k.lower())]
        except ValueError:
            raise ValueError(f"unknown packing kind {k!r}") from None
    raise TypeError(f"cannot interpret {k!r} as a packing kind")
