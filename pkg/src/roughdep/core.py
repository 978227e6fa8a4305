"""Indexed finite universes, bitmask subsets, relations, and data tables.

Ground rules for the whole workbench: universes are small and indexed,
every subset is an immutable bitmask over its universe, and anything that
touches weights or membership degrees is exact rational.  Derived facts
(reflexivity, transitivity, properness) are always recomputed from the raw
data, never trusted from input flags.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    RaggedRowError,
    RelationError,
    TableError,
    UniverseError,
    UniverseMismatchError,
)

MAX_UNIVERSE = 24
# power-set iteration refuses above this size; suites stay far below
MAX_ENUMERABLE = 16


@dataclass(frozen=True)
class Universe:
    """An indexed list of distinct element labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if not self.labels:
            raise UniverseError("universe must have at least one element")
        if len(self.labels) > MAX_UNIVERSE:
            raise UniverseError(
                f"universe size {len(self.labels)} exceeds cap {MAX_UNIVERSE}"
            )
        if len(set(self.labels)) != len(self.labels):
            raise UniverseError("universe labels must be distinct")

    @classmethod
    def of_size(cls, n: int) -> "Universe":
        return cls(tuple(str(i) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UniverseError(f"unknown element {label!r}") from None

    def mask(self, bits: int) -> "SubsetMask":
        return SubsetMask(self, bits)

    def empty(self) -> "SubsetMask":
        return SubsetMask(self, 0)

    def full(self) -> "SubsetMask":
        return SubsetMask(self, (1 << self.size) - 1)

    def singleton(self, i: int) -> "SubsetMask":
        return SubsetMask(self, 1 << i)

    def subset(self, labels: Iterable[str]) -> "SubsetMask":
        bits = 0
        for lab in labels:
            bits |= 1 << self.index(lab)
        return SubsetMask(self, bits)

    def subset_of_indices(self, indices: Iterable[int]) -> "SubsetMask":
        bits = 0
        for i in indices:
            bits |= 1 << i
        return SubsetMask(self, bits)

    def all_masks(self) -> Iterator["SubsetMask"]:
        """All 2^n subsets in bit order.  Refuses oversized universes."""
        if self.size > MAX_ENUMERABLE:
            raise UniverseError(
                f"power-set iteration refused for size {self.size} > {MAX_ENUMERABLE}"
            )
        for bits in range(1 << self.size):
            yield SubsetMask(self, bits)


@dataclass(frozen=True)
class SubsetMask:
    """A subset of a universe, stored as a membership bitmask."""

    universe: Universe
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.universe.size):
            raise UniverseError(f"mask {self.bits:#x} out of range for universe")

    def _check(self, other: "SubsetMask") -> None:
        if self.universe != other.universe:
            raise UniverseMismatchError("operands live on different universes")

    def __or__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.universe, self.bits | other.bits)

    def __and__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.universe, self.bits & other.bits)

    def __sub__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.universe, self.bits & ~other.bits)

    def __xor__(self, other: "SubsetMask") -> "SubsetMask":
        """Symmetric difference."""
        self._check(other)
        return SubsetMask(self.universe, self.bits ^ other.bits)

    def complement(self) -> "SubsetMask":
        full = (1 << self.universe.size) - 1
        return SubsetMask(self.universe, full & ~self.bits)

    def issubset(self, other: "SubsetMask") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def ispropersubset(self, other: "SubsetMask") -> bool:
        return self.issubset(other) and self.bits != other.bits

    def __le__(self, other: "SubsetMask") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "SubsetMask") -> bool:
        return self.ispropersubset(other)

    def __contains__(self, index: int) -> bool:
        return bool(self.bits >> index & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def indices(self) -> tuple[int, ...]:
        return tuple(self)

    def labels(self) -> tuple[str, ...]:
        return tuple(self.universe.labels[i] for i in self)

    def lex_key(self) -> tuple[int, ...]:
        """Deterministic tie-break key: the sorted index tuple."""
        return tuple(self)

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


# ---------------------------------------------------------------------------
# binary relations


@dataclass(frozen=True)
class BinaryRelation:
    """A relation on one universe; structural flags are always recomputed."""

    universe: Universe
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        n = self.universe.size
        for a, b in self.pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise RelationError(f"pair ({a},{b}) out of range")

    @classmethod
    def from_label_pairs(
        cls, universe: Universe, pairs: Iterable[tuple[str, str]]
    ) -> "BinaryRelation":
        idx = {(universe.index(a), universe.index(b)) for a, b in pairs}
        return cls(universe, frozenset(idx))

    @classmethod
    def identity(cls, universe: Universe) -> "BinaryRelation":
        return cls(universe, frozenset((i, i) for i in range(universe.size)))

    @classmethod
    def from_classes(
        cls, universe: Universe, classes: Iterable[Iterable[int]]
    ) -> "BinaryRelation":
        pairs = set()
        for block in classes:
            block = list(block)
            for a in block:
                for b in block:
                    pairs.add((a, b))
        return cls(universe, frozenset(pairs))

    def holds(self, a: int, b: int) -> bool:
        return (a, b) in self.pairs

    def successors(self, a: int) -> SubsetMask:
        bits = 0
        for x, y in self.pairs:
            if x == a:
                bits |= 1 << y
        return SubsetMask(self.universe, bits)

    def predecessors(self, b: int) -> SubsetMask:
        bits = 0
        for x, y in self.pairs:
            if y == b:
                bits |= 1 << x
        return SubsetMask(self.universe, bits)

    @cached_property
    def is_reflexive(self) -> bool:
        return all((i, i) in self.pairs for i in range(self.universe.size))

    @cached_property
    def is_symmetric(self) -> bool:
        return all((b, a) in self.pairs for a, b in self.pairs)

    @cached_property
    def is_transitive(self) -> bool:
        succ = [self.successors(i).bits for i in range(self.universe.size)]
        for a, b in self.pairs:
            if succ[b] & ~succ[a]:
                return False
        return True

    @cached_property
    def is_antiserial(self) -> bool:
        """Every element lies in some successor neighborhood."""
        seen = 0
        for _, y in self.pairs:
            seen |= 1 << y
        return seen == (1 << self.universe.size) - 1

    @cached_property
    def is_equivalence(self) -> bool:
        return self.is_reflexive and self.is_symmetric and self.is_transitive

    def require_equivalence(self) -> None:
        if not self.is_equivalence:
            raise RelationError("relation is not an equivalence")

    def classes(self) -> tuple[SubsetMask, ...]:
        """Equivalence classes in order of least member."""
        self.require_equivalence()
        out: list[SubsetMask] = []
        seen = 0
        for i in range(self.universe.size):
            if seen >> i & 1:
                continue
            cls_mask = self.successors(i)
            seen |= cls_mask.bits
            out.append(cls_mask)
        return tuple(out)

    def class_of(self, x: int) -> SubsetMask:
        self.require_equivalence()
        return self.successors(x)


# ---------------------------------------------------------------------------
# information tables

NA: frozenset[str] = frozenset()


@dataclass(frozen=True)
class InformationTable:
    """Rows of objects valued over attributes; cells are finite value sets.

    An empty cell value set means the value is missing (NA).  The table is
    deterministic when every cell is a singleton.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    cells: tuple[tuple[frozenset[str], ...], ...]

    def __post_init__(self):
        if len(set(self.objects)) != len(self.objects):
            raise TableError("object names must be distinct")
        if len(set(self.attributes)) != len(self.attributes):
            raise TableError("attribute names must be distinct")
        for name, row in zip(self.objects, self.cells):
            if len(row) != len(self.attributes):
                raise RaggedRowError(name, len(row), len(self.attributes))

    @classmethod
    def from_rows(
        cls,
        attributes: Iterable[str],
        rows: Iterable[tuple[str, Iterable[Iterable[str]]]],
        ragged: str = "strict",
    ) -> "InformationTable":
        """Build a table from (name, cells) rows.

        ragged="strict" rejects any row whose arity disagrees with the
        attribute list; ragged="pad" right-pads short rows with NA cells.
        Overlong rows are rejected in both modes.
        """
        attrs = tuple(attributes)
        names: list[str] = []
        data: list[tuple[frozenset[str], ...]] = []
        for name, cells in rows:
            row = [frozenset(c) for c in cells]
            if len(row) > len(attrs):
                raise RaggedRowError(name, len(row), len(attrs))
            if len(row) < len(attrs):
                if ragged == "pad":
                    row.extend([NA] * (len(attrs) - len(row)))
                else:
                    raise RaggedRowError(name, len(row), len(attrs))
            names.append(name)
            data.append(tuple(row))
        return cls(tuple(names), attrs, tuple(data))

    @property
    def is_deterministic(self) -> bool:
        return all(len(cell) == 1 for row in self.cells for cell in row)

    def universe(self) -> Universe:
        return Universe(self.objects)

    def value(self, obj: str, attr: str) -> frozenset[str]:
        i = self.objects.index(obj)
        j = self._attr_index(attr)
        return self.cells[i][j]

    def _attr_index(self, attr: str) -> int:
        try:
            return self.attributes.index(attr)
        except ValueError:
            raise TableError(f"unknown attribute {attr!r}") from None


def _attribute_indices(table: InformationTable, attributes: Iterable[str]) -> list[int]:
    idx = [table._attr_index(a) for a in attributes]
    if not idx:
        raise TableError("attribute selection must be nonempty")
    return idx


def derive_indiscernibility(
    table: InformationTable, attributes: Iterable[str]
) -> BinaryRelation:
    """Equivalence relating rows that agree exactly on every chosen attribute."""
    idx = _attribute_indices(table, attributes)
    keys = [tuple(table.cells[r][j] for j in idx) for r in range(len(table.objects))]
    universe = table.universe()
    pairs = {
        (a, b)
        for a in range(len(keys))
        for b in range(len(keys))
        if keys[a] == keys[b]
    }
    rel = BinaryRelation(universe, frozenset(pairs))
    rel.require_equivalence()
    return rel


def derive_tolerance(
    table: InformationTable, attributes: Iterable[str]
) -> BinaryRelation:
    """Reflexive symmetric relation: some chosen attribute takes overlapping
    value sets on the two rows.

    NA cells never match anything, including other NA cells; reflexive pairs
    are included regardless so the result is a tolerance.
    """
    idx = _attribute_indices(table, attributes)
    universe = table.universe()
    n = len(table.objects)
    pairs = {(i, i) for i in range(n)}
    for a in range(n):
        for b in range(a + 1, n):
            for j in idx:
                va, vb = table.cells[a][j], table.cells[b][j]
                if va and vb and va & vb:
                    pairs.add((a, b))
                    pairs.add((b, a))
                    break
    return BinaryRelation(universe, frozenset(pairs))


# ---------------------------------------------------------------------------
# classical approximations


@dataclass(frozen=True)
class Approximation:
    """The four regions a subset determines in an approximation space."""

    lower: SubsetMask
    upper: SubsetMask
    boundary: SubsetMask
    negative: SubsetMask


def classical_approximations(a: SubsetMask, eq: BinaryRelation) -> Approximation:
    eq.require_equivalence()
    if a.universe != eq.universe:
        raise UniverseMismatchError("subset and relation universes differ")
    lower = 0
    upper = 0
    for cls_mask in eq.classes():
        if cls_mask.bits & ~a.bits == 0:
            lower |= cls_mask.bits
        if cls_mask.bits & a.bits:
            upper |= cls_mask.bits
    u = a.universe
    return Approximation(
        lower=u.mask(lower),
        upper=u.mask(upper),
        boundary=u.mask(upper & ~lower),
        negative=u.mask(((1 << u.size) - 1) & ~upper),
    )


def rough_membership(x: int, a: SubsetMask, eq: BinaryRelation) -> Fraction:
    """|[x] meet A| / |[x]| as an exact rational."""
    eq.require_equivalence()
    cls_mask = eq.class_of(x)
    return Fraction((cls_mask & a).bits.bit_count(), len(cls_mask))


def rough_inclusion(a: SubsetMask, b: SubsetMask, eq: BinaryRelation) -> bool:
    ap = classical_approximations(a, eq)
    bp = classical_approximations(b, eq)
    return ap.lower.issubset(bp.lower) and ap.upper.issubset(bp.upper)


def rough_equal(a: SubsetMask, b: SubsetMask, eq: BinaryRelation) -> bool:
    return rough_inclusion(a, b, eq) and rough_inclusion(b, a, eq)


def submasks(bits: int) -> Iterator[int]:
    """All submask integers of bits, including 0 and bits itself."""
    sub = bits
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & bits


def all_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    """Set partitions of items (restricted-growth enumeration)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in all_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def product_masks(universe: Universe, repeat: int) -> Iterator[tuple[SubsetMask, ...]]:
    for combo in itertools.product(universe.all_masks(), repeat=repeat):
        yield combo
