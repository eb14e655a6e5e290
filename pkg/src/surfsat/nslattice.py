"""Integral intersection lattices of smooth projective rational surfaces.

The model is always rooted at the projective plane: a rank-one lattice with
a degree generator of square +1 and canonical class -3, extended by point
blowups.  Each blowup appends an exceptional generator of square -1,
orthogonal to everything before it, and shifts the canonical class by it.
Tracked curve classes are carried along as strict transforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .configuration import Configuration, CurveNode
from .errors import InputError, PreconditionError
from .linalg import SymmetricMatrix


@dataclass(frozen=True)
class ClassRecord:
    """A tracked curve class: integer coordinates in the lattice basis plus
    the stored geometric genus of the curve it names."""

    name: str
    vector: tuple[int, ...]
    genus: int = 0

    def __post_init__(self):
        if self.genus < 0:
            raise InputError(f"class {self.name!r} has negative genus")
        object.__setattr__(self, "vector", tuple(int(v) for v in self.vector))


@dataclass(frozen=True)
class NSLattice:
    basis_names: tuple[str, ...]
    gram: SymmetricMatrix
    canonical: tuple[int, ...]

    def __post_init__(self):
        if self.gram.n != len(self.basis_names):
            raise InputError("gram dimension does not match basis size")
        if len(self.canonical) != len(self.basis_names):
            raise InputError("canonical class has wrong dimension")
        for i in range(self.gram.n):
            for j in range(self.gram.n):
                if self.gram.entry(i, j).denominator != 1:
                    raise InputError("lattice pairing must be integral")
        rank = self.gram.n
        if self.gram.inertia() != (1, rank - 1, 0):
            raise InputError(
                f"lattice pairing must have signature (1,{rank - 1}), got "
                f"inertia {self.gram.inertia()}"
            )
        object.__setattr__(self, "canonical", tuple(int(v) for v in self.canonical))

    @property
    def rank(self) -> int:
        return self.gram.n

    def _vec(self, c: Union[ClassRecord, Sequence[int]]) -> tuple[int, ...]:
        v = c.vector if isinstance(c, ClassRecord) else tuple(c)
        if len(v) != self.rank:
            raise PreconditionError(
                f"class vector has dimension {len(v)}, lattice rank is {self.rank}"
            )
        return v

    def pair(self, c1, c2) -> Fraction:
        return self.gram.pair(self._vec(c1), self._vec(c2))

    def self_intersection(self, c) -> Fraction:
        v = self._vec(c)
        return self.gram.pair(v, v)


@dataclass(frozen=True)
class BlowupResult:
    lattice: NSLattice
    classes: tuple[ClassRecord, ...]
    exceptional: ClassRecord


def projective_plane() -> NSLattice:
    """Rank-one lattice of the plane: L^2 = 1, canonical class -3L."""
    return NSLattice(("L",), SymmetricMatrix([[1]]), (-3,))


def line_class(genus: int = 0) -> ClassRecord:
    return ClassRecord("L", (1,), genus=genus)


def blowup(
    lattice: NSLattice,
    passing: Sequence[tuple[ClassRecord, int]],
    name: str | None = None,
) -> BlowupResult:
    """Blow up a point, listing each tracked class with its multiplicity
    at the centre.

    The returned classes are the strict transforms C - mE in the order they
    were listed; classes with multiplicity 0 are merely re-expressed in the
    extended basis.
    """
    rank = lattice.rank
    exc_name = name if name is not None else f"E{rank}"
    if exc_name in lattice.basis_names:
        raise InputError(f"basis name {exc_name!r} already in use")
    for record, mult in passing:
        if not isinstance(mult, int) or mult < 0:
            raise PreconditionError(
                f"multiplicity of {record.name!r} must be a nonnegative "
                f"integer, got {mult!r}"
            )
        lattice._vec(record)  # dimension check

    old = lattice.gram
    rows = [
        [old.entry(i, j) for j in range(rank)] + [0] for i in range(rank)
    ]
    rows.append([0] * rank + [-1])
    new_lattice = NSLattice(
        lattice.basis_names + (exc_name,),
        SymmetricMatrix(rows),
        lattice.canonical + (1,),
    )
    updated = tuple(
        ClassRecord(record.name, record.vector + (-mult,), record.genus)
        for record, mult in passing
    )
    exceptional = ClassRecord(exc_name, (0,) * rank + (1,), genus=0)
    return BlowupResult(new_lattice, updated, exceptional)


def adjunction_genus(lattice: NSLattice, c) -> Fraction:
    """Arithmetic genus of a curve class: half its pairing with itself plus
    the canonical class, plus one."""
    v = lattice._vec(c)
    return lattice.gram.pair(v, v) / 2 + lattice.gram.pair(v, lattice.canonical) / 2 + 1


def configuration_from_classes(
    lattice: NSLattice, records: Sequence[ClassRecord]
) -> Configuration:
    """Dual graph of the listed classes under the lattice pairing.

    Distinct irreducible curves meet non-negatively, so any negative
    off-diagonal pairing means the records cannot be distinct prime
    divisors; the offending pair is reported.
    """
    n = len(records)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            value = lattice.pair(records[i], records[j])
            if i != j and value < 0:
                raise InputError(
                    f"classes {records[i].name!r} and {records[j].name!r} "
                    f"pair negatively ({value}); they cannot both be "
                    "irreducible curves in one configuration"
                )
            rows[i][j] = rows[j][i] = value
    nodes = [
        CurveNode(i, rec.name, genus=rec.genus, proper=True)
        for i, rec in enumerate(records)
    ]
    return Configuration(nodes, SymmetricMatrix(rows))
