"""Weighted dual graphs of prime divisors and divisors supported on them.

A :class:`Configuration` is the dual graph of a set of irreducible curves on
a normal surface: one node per curve (with its geometric genus and a flag
for properness) and the symmetric matrix of pairwise intersection numbers.
Distinct prime divisors meet non-negatively, so off-diagonal entries must be
>= 0; diagonal entries (self-intersections) are unconstrained and may be
fractional on singular surfaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import InputError, PreconditionError
from .linalg import SymmetricMatrix, as_rational


@dataclass(frozen=True)
class CurveNode:
    id: int
    name: str
    genus: int = 0
    proper: bool = True

    def __post_init__(self):
        if self.genus < 0:
            raise InputError(f"curve {self.name!r} has negative genus {self.genus}")


class Divisor:
    """Formal rational combination of configuration curves.

    Stored sparsely; nodes with coefficient zero are dropped.  Supports
    addition, subtraction and scaling by rationals.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Optional[Mapping[int, object]] = None):
        coeffs = {}
        for node, value in (coefficients or {}).items():
            c = as_rational(value)
            if c != 0:
                coeffs[int(node)] = c
        self._coeffs = dict(sorted(coeffs.items()))

    @classmethod
    def of(cls, node: int, coefficient=1) -> "Divisor":
        return cls({node: coefficient})

    @classmethod
    def reduced(cls, subset: Iterable[int]) -> "Divisor":
        """The reduced divisor: coefficient 1 on every node of ``subset``."""
        return cls({node: 1 for node in subset})

    @property
    def coefficients(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def coefficient(self, node: int) -> Fraction:
        return self._coeffs.get(node, Fraction(0))

    def support(self) -> frozenset[int]:
        return frozenset(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self._coeffs.values())

    def __add__(self, other: "Divisor") -> "Divisor":
        coeffs = dict(self._coeffs)
        for node, c in other._coeffs.items():
            coeffs[node] = coeffs.get(node, Fraction(0)) + c
        return Divisor(coeffs)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "Divisor":
        s = as_rational(scalar)
        return Divisor({node: s * c for node, c in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(self._coeffs.items()))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "Divisor(0)"
        parts = [f"{c}*[{n}]" for n, c in self._coeffs.items()]
        return "Divisor(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class Restriction:
    """A sub-configuration together with the map back to ambient node ids."""

    configuration: "Configuration"
    ambient_ids: tuple[int, ...]

    def to_ambient(self, divisor: Divisor) -> Divisor:
        return Divisor(
            {self.ambient_ids[n]: c for n, c in divisor.coefficients.items()}
        )


class Configuration:
    """Dual graph: curve nodes plus their intersection matrix."""

    __slots__ = ("_nodes", "_gram")

    def __init__(self, nodes: Sequence[CurveNode], gram: SymmetricMatrix):
        nodes = tuple(nodes)
        if gram.n != len(nodes):
            raise InputError(
                f"gram has dimension {gram.n}, expected {len(nodes)} nodes"
            )
        ids = [node.id for node in nodes]
        if ids != list(range(len(nodes))):
            raise InputError(f"node ids must be 0..{len(nodes) - 1}, got {ids}")
        names = [node.name for node in nodes]
        if len(set(names)) != len(names):
            raise InputError("curve names must be unique")
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                if gram.entry(i, j) < 0:
                    raise InputError(
                        f"distinct curves {names[i]!r} and {names[j]!r} have "
                        f"negative intersection {gram.entry(i, j)}"
                    )
        self._nodes = nodes
        self._gram = gram

    @classmethod
    def build(cls, curves, intersections=()) -> "Configuration":
        """Convenience constructor.

        ``curves`` is a sequence of (name, self_intersection) pairs or
        (name, self_intersection, genus) triples; ``intersections`` lists
        (i, j, value) for the nonzero off-diagonal entries.
        """
        nodes = []
        diag = []
        for idx, entry in enumerate(curves):
            name, self_int, *rest = entry
            genus = rest[0] if rest else 0
            nodes.append(CurveNode(idx, name, genus=genus))
            diag.append(as_rational(self_int))
        n = len(nodes)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = diag[i]
        for i, j, value in intersections:
            if i == j:
                raise InputError(f"self-intersection of node {i} belongs in 'curves'")
            rows[i][j] = rows[j][i] = as_rational(value)
        return cls(nodes, SymmetricMatrix(rows))

    @property
    def nodes(self) -> tuple[CurveNode, ...]:
        return self._nodes

    @property
    def gram(self) -> SymmetricMatrix:
        return self._gram

    @property
    def n(self) -> int:
        return len(self._nodes)

    def node_ids(self) -> frozenset[int]:
        return frozenset(range(self.n))

    def node_by_name(self, name: str) -> CurveNode:
        for node in self._nodes:
            if node.name == name:
                return node
        raise InputError(f"no curve named {name!r}")

    def names(self, subset: Iterable[int]) -> tuple[str, ...]:
        return tuple(self._nodes[i].name for i in sorted(subset))

    def _check_subset(self, subset: Iterable[int]) -> list[int]:
        ids = sorted(set(subset))
        for i in ids:
            if not 0 <= i < self.n:
                raise PreconditionError(f"node {i} is not in the configuration")
        return ids

    def adjacent(self, i: int, j: int) -> bool:
        """Curves meet iff their intersection number is > 0."""
        return i != j and self._gram.entry(i, j) > 0

    def connected_components(
        self, subset: Optional[Iterable[int]] = None
    ) -> tuple[frozenset[int], ...]:
        """Partition of ``subset`` (default: all nodes) under adjacency.

        Components are listed by their least node id.
        """
        ids = self._check_subset(subset if subset is not None else range(self.n))
        remaining = set(ids)
        components = []
        for start in ids:
            if start not in remaining:
                continue
            stack = [start]
            comp = set()
            remaining.discard(start)
            while stack:
                i = stack.pop()
                comp.add(i)
                for j in list(remaining):
                    if self.adjacent(i, j):
                        remaining.discard(j)
                        stack.append(j)
            components.append(frozenset(comp))
        return tuple(components)

    def is_connected(self, subset: Iterable[int]) -> bool:
        ids = self._check_subset(subset)
        if not ids:
            return False
        return len(self.connected_components(ids)) == 1

    def intersection_number(self, d1: Divisor, d2: Divisor) -> Fraction:
        """Bilinear extension of the Gram pairing to divisors."""
        total = Fraction(0)
        for i, ci in d1.coefficients.items():
            if not 0 <= i < self.n:
                raise PreconditionError(f"divisor references unknown node {i}")
            for j, cj in d2.coefficients.items():
                if not 0 <= j < self.n:
                    raise PreconditionError(f"divisor references unknown node {j}")
                total += ci * cj * self._gram.entry(i, j)
        return total

    def gram_on(self, subset: Iterable[int]) -> SymmetricMatrix:
        """Principal submatrix of the Gram matrix on ``subset`` (sorted)."""
        return self._gram.restrict(self._check_subset(subset))

    def restrict(self, subset: Iterable[int]) -> Restriction:
        """Induced sub-configuration with re-indexed ids."""
        ids = self._check_subset(subset)
        nodes = [
            CurveNode(new, self._nodes[old].name, self._nodes[old].genus,
                      self._nodes[old].proper)
            for new, old in enumerate(ids)
        ]
        return Restriction(
            Configuration(nodes, self._gram.restrict(ids)), tuple(ids)
        )

    def disjoint(self, a: Iterable[int], b: Iterable[int]) -> bool:
        """No shared nodes and no positive pairing across the two sets."""
        sa = self._check_subset(a)
        sb = self._check_subset(b)
        if set(sa) & set(sb):
            return False
        return all(not self.adjacent(i, j) for i in sa for j in sb)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Configuration)
            and self._nodes == other._nodes
            and self._gram == other._gram
        )

    def __hash__(self) -> int:
        return hash((self._nodes, self._gram))

    def __repr__(self) -> str:
        return f"Configuration({', '.join(n.name for n in self._nodes)})"


def intersection_number(config: Configuration, d1: Divisor, d2: Divisor) -> Fraction:
    return config.intersection_number(d1, d2)
