"""Covering approximation spaces: descriptors, operators, closure diagnostics.

Implements the neighborhood/description machinery of covers, the five
cover-driven approximation operators, the unarity test with its two
independent characterizations, and per-operator closure diagnostics that
compare a direct Kuratowski check against the operator's structural side
condition.  Disagreements are reported, never reconciled.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .core import BinaryRelation, SubsetMask, Universe, submasks
from .errors import (
    AntiSerialityError,
    BaseConditionError,
    CoverError,
    UncoveredElementError,
    UniverseMismatchError,
)

UPPER_KINDS = ("u1", "u1+", "u2+", "u3+", "u4+")


@dataclass(frozen=True)
class CoverSpace:
    """A finite universe with a set of nonempty member subsets."""

    universe: Universe
    members: tuple[SubsetMask, ...]

    def __post_init__(self):
        if not self.members:
            raise CoverError("cover must have at least one member")
        for m in self.members:
            if m.universe != self.universe:
                raise UniverseMismatchError("member universe differs from cover")
            if m.bits == 0:
                raise CoverError("cover members must be nonempty")
        # canonical form: deduplicated, sorted by mask bits
        object.__setattr__(
            self,
            "members",
            tuple(
                self.universe.mask(b)
                for b in sorted({m.bits for m in self.members})
            ),
        )

    @classmethod
    def of(cls, universe: Universe, members: Iterable[Iterable[str]]) -> "CoverSpace":
        return cls(universe, tuple(universe.subset(m) for m in members))

    @classmethod
    def of_indices(
        cls, universe: Universe, members: Iterable[Iterable[int]]
    ) -> "CoverSpace":
        return cls(
            universe, tuple(universe.subset_of_indices(m) for m in members)
        )

    @cached_property
    def is_proper(self) -> bool:
        bits = 0
        for m in self.members:
            bits |= m.bits
        return bits == (1 << self.universe.size) - 1

    def containing(self, x: int) -> tuple[SubsetMask, ...]:
        return tuple(m for m in self.members if x in m)


def cover_from_neighborhoods(rel: BinaryRelation) -> CoverSpace:
    """Cover of successor neighborhoods n(x); needs anti-seriality."""
    if not rel.is_antiserial:
        covered = 0
        for _, y in rel.pairs:
            covered |= 1 << y
        for i in range(rel.universe.size):
            if not covered >> i & 1:
                raise AntiSerialityError(rel.universe.labels[i])
    members = [rel.successors(x) for x in range(rel.universe.size)]
    return CoverSpace(rel.universe, tuple(m for m in members if m.bits))


# ---------------------------------------------------------------------------
# the field generated by a cover


@dataclass(frozen=True)
class SigmaField:
    """Atom partition of the field of sets a cover generates."""

    universe: Universe
    atoms: tuple[SubsetMask, ...]

    @property
    def atom_count(self) -> int:
        return len(self.atoms)

    def contains(self, mask: SubsetMask) -> bool:
        """mask is a union of atoms."""
        rest = mask.bits
        for atom in self.atoms:
            if atom.bits & rest:
                if atom.bits & ~mask.bits:
                    return False
                rest &= ~atom.bits
        return rest == 0

    def members(self) -> Iterator[SubsetMask]:
        """All atom unions, in atom-subset bit order."""
        k = len(self.atoms)
        for sel in range(1 << k):
            bits = 0
            for i in range(k):
                if sel >> i & 1:
                    bits |= self.atoms[i].bits
            yield self.universe.mask(bits)

    def member_count(self) -> int:
        return 1 << len(self.atoms)


def sigma_field_from_cover(cover: CoverSpace) -> SigmaField:
    """Coarsest partition whose generated field contains every member.

    Atoms group elements by the exact set of cover members containing them;
    uncovered elements share the all-outside signature.  The generated field
    is closed under union, intersection and complement by construction, and
    containment of every member is verified.
    """
    n = cover.universe.size
    signatures: dict[tuple[int, ...], int] = {}
    for x in range(n):
        sig = tuple(i for i, m in enumerate(cover.members) if x in m)
        signatures[sig] = signatures.get(sig, 0) | (1 << x)
    atoms = tuple(
        cover.universe.mask(bits) for bits in sorted(signatures.values())
    )
    field = SigmaField(cover.universe, atoms)
    for m in cover.members:
        if not field.contains(m):
            raise CoverError(f"internal: generated field misses member {m!r}")
    return field


# ---------------------------------------------------------------------------
# point descriptors


@dataclass(frozen=True)
class PointDescriptors:
    """Neighborhood, descriptions, and friend sets of one element."""

    element: int
    nbd: SubsetMask
    friends: SubsetMask
    minimal: tuple[SubsetMask, ...]
    maximal: tuple[SubsetMask, ...]
    cfr: SubsetMask


def point_descriptors(cover: CoverSpace, x: int) -> PointDescriptors:
    containing = cover.containing(x)
    if not containing:
        raise UncoveredElementError(cover.universe.labels[x])
    nbd_bits = (1 << cover.universe.size) - 1
    fr_bits = 0
    for m in containing:
        nbd_bits &= m.bits
        fr_bits |= m.bits
    minimal = tuple(
        m for m in containing
        if not any(o.bits != m.bits and o.bits & ~m.bits == 0 for o in containing)
    )
    maximal = tuple(
        m for m in containing
        if not any(o.bits != m.bits and m.bits & ~o.bits == 0 for o in containing)
    )
    cfr_bits = 0
    for m in minimal:
        cfr_bits |= m.bits
    u = cover.universe
    return PointDescriptors(
        element=x,
        nbd=u.mask(nbd_bits),
        friends=u.mask(fr_bits),
        minimal=minimal,
        maximal=maximal,
        cfr=u.mask(cfr_bits),
    )


def covering_reduct(cover: CoverSpace) -> CoverSpace:
    """Drop every reducible member.

    A member is reducible when it is a maximal description of none of its
    points.  Simultaneous removal is idempotent: members that survive are
    maximal among the survivors too.
    """
    keep = []
    for m in cover.members:
        reducible = all(
            m.bits not in {d.bits for d in point_descriptors(cover, x).maximal}
            for x in m
        )
        if not reducible:
            keep.append(m)
    if not keep:
        raise CoverError("reduct removed every member")
    return CoverSpace(cover.universe, tuple(keep))


# ---------------------------------------------------------------------------
# approximation operators


def lower_l1(x: SubsetMask, cover: CoverSpace) -> SubsetMask:
    """Union of the members inside x."""
    bits = 0
    for m in cover.members:
        if m.bits & ~x.bits == 0:
            bits |= m.bits
    return cover.universe.mask(bits)


def _require_covered(x: SubsetMask, cover: CoverSpace) -> None:
    covered = 0
    for m in cover.members:
        covered |= m.bits
    stray = x.bits & ~covered
    if stray:
        i = (stray & -stray).bit_length() - 1
        raise UncoveredElementError(cover.universe.labels[i])


def upper(x: SubsetMask, cover: CoverSpace, kind: str) -> SubsetMask:
    """One of the five cover-driven upper approximations of x."""
    if kind not in UPPER_KINDS:
        raise CoverError(f"unknown upper kind {kind!r}")
    _require_covered(x, cover)
    u = cover.universe
    if kind == "u2+":
        bits = 0
        for m in cover.members:
            if m.bits & x.bits:
                bits |= m.bits
        return u.mask(bits)
    if kind == "u3+":
        bits = 0
        for xi in x:
            bits |= point_descriptors(cover, xi).cfr.bits
        return u.mask(bits)
    l1 = lower_l1(x, cover).bits
    if kind == "u1":
        bits = l1
        for xi in x:
            if not l1 >> xi & 1:
                bits |= point_descriptors(cover, xi).cfr.bits
        return u.mask(bits)
    if kind == "u1+":
        bits = l1
        for xi in x:
            bits |= point_descriptors(cover, xi).cfr.bits
        return u.mask(bits)
    # u4+: members meeting the unresolved part contribute whole
    bits = l1
    rest = x.bits & ~l1
    for m in cover.members:
        if m.bits & rest:
            bits |= m.bits
    return u.mask(bits)


# ---------------------------------------------------------------------------
# unarity


@dataclass(frozen=True)
class UnaryVerdict:
    unary: bool
    md_form: bool
    intersection_form: bool
    agree: bool
    witness: str


def is_unary(cover: CoverSpace) -> UnaryVerdict:
    """Check unarity two independent ways and cross-check.

    Form 1: every point has exactly one minimal description.  Form 2: every
    pairwise member intersection is a union of members (the empty union is
    allowed, covering the disjoint case).
    """
    if not cover.is_proper:
        raise CoverError("unarity is defined for proper covers")
    md_form = True
    witness = ""
    for x in range(cover.universe.size):
        if len(point_descriptors(cover, x).minimal) != 1:
            md_form = False
            witness = f"x={cover.universe.labels[x]}"
            break
    inter_form = True
    inter_witness = ""
    for i, k1 in enumerate(cover.members):
        for k2 in cover.members[i:]:
            inter = k1.bits & k2.bits
            rest = inter
            for m in cover.members:
                if m.bits & ~inter == 0:
                    rest &= ~m.bits
            if rest:
                inter_form = False
                inter_witness = f"(K1={k1!r}, K2={k2!r})"
                break
        if not inter_form:
            break
    if not witness:
        witness = inter_witness
    return UnaryVerdict(
        unary=md_form,
        md_form=md_form,
        intersection_form=inter_form,
        agree=md_form == inter_form,
        witness=witness,
    )


def unary_equivalent_conditions(cover: CoverSpace) -> dict[str, bool]:
    """The unarity-equivalent operator conditions, each computed directly."""
    base = is_unary(cover).unary
    u = cover.universe
    u3_eq_u1 = all(
        upper(x, cover, "u3+") == upper(x, cover, "u1") for x in u.all_masks()
    )
    member_bits = {m.bits for m in cover.members}
    nbd_in_cover = all(
        point_descriptors(cover, x).nbd.bits in member_bits for x in range(u.size)
    )
    u4_u3_stable = all(
        upper(upper(x, cover, "u4+"), cover, "u3+") == upper(x, cover, "u4+")
        for x in u.all_masks()
    )
    u2_u3_stable = all(
        upper(upper(x, cover, "u2+"), cover, "u3+") == upper(x, cover, "u2+")
        for x in u.all_masks()
    )
    return {
        "unary": base,
        "u3_equals_u1": u3_eq_u1,
        "nbd_in_cover": nbd_in_cover,
        "u4_then_u3_stable": u4_u3_stable,
        "u2_then_u3_stable": u2_u3_stable,
    }


# ---------------------------------------------------------------------------
# closure diagnostics


@dataclass(frozen=True)
class ClosureDiagnostics:
    """Direct Kuratowski verdict vs. the structural side condition."""

    kind: str
    closure: bool
    closure_witnesses: tuple[str, ...]
    side_condition: bool
    side_witnesses: tuple[str, ...]
    agree: bool


def _operator_table(cover: CoverSpace, kind: str) -> list[int]:
    n = cover.universe.size
    table = []
    for bits in range(1 << n):
        table.append(upper(cover.universe.mask(bits), cover, kind).bits)
    return table


def _kuratowski(table: list[int], universe: Universe) -> tuple[bool, list[str]]:
    """Preserves empty, extensive, idempotent, finitely additive."""
    n = universe.size
    witnesses: list[str] = []
    if table[0] != 0:
        witnesses.append("empty set not preserved")
    for bits in range(1 << n):
        if bits & ~table[bits]:
            witnesses.append(f"not extensive at {universe.mask(bits)!r}")
            break
    for bits in range(1 << n):
        if table[table[bits]] != table[bits]:
            witnesses.append(f"not idempotent at {universe.mask(bits)!r}")
            break
    for a in range(1 << n):
        stop = False
        for b in range(1 << n):
            if table[a | b] != table[a] | table[b]:
                witnesses.append(
                    f"not additive at ({universe.mask(a)!r}, {universe.mask(b)!r})"
                )
                stop = True
                break
        if stop:
            break
    return (not witnesses, witnesses)


def _side_condition(cover: CoverSpace, kind: str) -> tuple[bool, list[str]]:
    u = cover.universe
    n = u.size
    if kind in ("u1", "u1+"):
        v = is_unary(cover)
        return v.unary, [] if v.unary else [v.witness]
    if kind == "u2+":
        friends = [point_descriptors(cover, x).friends for x in range(n)]
        for a in range(n):
            for b in range(n):
                fa, fb = friends[a], friends[b]
                if fa.bits != fb.bits and fa.bits & fb.bits:
                    return False, [
                        f"Fr({u.labels[a]})={fa!r} overlaps Fr({u.labels[b]})={fb!r}"
                    ]
        return True, []
    if kind == "u3+":
        cfr = [point_descriptors(cover, x).cfr for x in range(n)]
        for x in range(n):
            for b in range(n):
                if x in cfr[b] and cfr[x].bits & ~cfr[b].bits:
                    return False, [
                        f"{u.labels[x]} not representative in cfr({u.labels[b]})"
                    ]
        return True, []
    if kind == "u4+":
        member_bits = {m.bits for m in cover.members}
        for i, k1 in enumerate(cover.members):
            for k2 in cover.members[i + 1 :]:
                inter = k1.bits & k2.bits
                for x in u.mask(inter):
                    if (1 << x) not in member_bits:
                        return False, [
                            f"{{{u.labels[x]}}} missing with K1={k1!r}, K2={k2!r}"
                        ]
        return True, []
    raise CoverError(f"no side condition for kind {kind!r}")


def closure_diagnostics(cover: CoverSpace, kind: str) -> ClosureDiagnostics:
    if not cover.is_proper:
        raise CoverError("closure diagnostics need a proper cover")
    table = _operator_table(cover, kind)
    closure, cw = _kuratowski(table, cover.universe)
    side, sw = _side_condition(cover, kind)
    return ClosureDiagnostics(
        kind=kind,
        closure=closure,
        closure_witnesses=tuple(cw),
        side_condition=side,
        side_witnesses=tuple(sw),
        agree=closure == side,
    )


@dataclass(frozen=True)
class ChainReport:
    """Closure-implication chain over a corpus of covers."""

    covers_checked: int
    forward_failures: tuple[str, ...]
    u1_not_u4: tuple[str, ...]
    u3_not_u1: tuple[str, ...]


def closure_chain_report(covers: Iterable[CoverSpace]) -> ChainReport:
    """Verify u4+ closure implies u1 closure implies u3+ closure, and
    collect covers witnessing that the reverse implications fail."""
    checked = 0
    forward: list[str] = []
    rev1: list[str] = []
    rev2: list[str] = []
    for cover in covers:
        checked += 1
        c4 = closure_diagnostics(cover, "u4+").closure
        c1 = closure_diagnostics(cover, "u1").closure
        c3 = closure_diagnostics(cover, "u3+").closure
        desc = repr(list(cover.members))
        if c4 and not c1 or c1 and not c3:
            forward.append(desc)
        if c1 and not c4:
            rev1.append(desc)
        if c3 and not c1:
            rev2.append(desc)
    return ChainReport(
        covers_checked=checked,
        forward_failures=tuple(forward),
        u1_not_u4=tuple(rev1),
        u3_not_u1=tuple(rev2),
    )


def topology_from_base(cover: CoverSpace) -> tuple[SubsetMask, ...]:
    """The topology generated when the cover is a base; error with a witness
    triple otherwise.  Result is all member unions plus empty and full."""
    for i, k1 in enumerate(cover.members):
        for k2 in cover.members[i:]:
            inter = k1.bits & k2.bits
            for x in cover.universe.mask(inter):
                if not any(
                    x in m and m.bits & ~inter == 0 for m in cover.members
                ):
                    raise BaseConditionError(
                        f"K1={k1!r}, K2={k2!r}, x={cover.universe.labels[x]}"
                    )
    opens = {0, (1 << cover.universe.size) - 1}
    frontier = {m.bits for m in cover.members}
    opens |= frontier
    changed = True
    while changed:
        changed = False
        current = list(opens)
        for a in current:
            for m in frontier:
                u = a | m
                if u not in opens:
                    opens.add(u)
                    changed = True
    return tuple(cover.universe.mask(b) for b in sorted(opens))
