"""Granular operator spaces: granulations, point granules, membership degrees.

An OperatorSpace carries a granulation plus lower/upper operator tables with
no axioms enforced; GranularOperatorSpace additionally verifies the six
construction axioms (contraction and idempotence of lower, expansion of
upper under iteration, monotonicity of both, empty-set fixity).  Admissible
granulation checks, the general membership degree and its induced
equivalences, rough-object classification and region maps all live here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import BinaryRelation, SubsetMask, Universe, classical_approximations, submasks
from .covers import CoverSpace, lower_l1, upper
from .errors import (
    GranuleError,
    OperatorAxiomError,
    RelationError,
    UndefinedGammaError,
    UniverseMismatchError,
)
from .reports import LawResult, SuiteReport

GAMMA_KINDS = ("meet", "join", "choice", "meet-upper", "join-lower", "partial-meet")

_MATERIALIZE_CAP = 12  # 2^12 table entries; larger spaces memoize lazily


class OperatorSpace:
    """Granulation plus lower/upper operators; axioms are not enforced here."""

    def __init__(
        self,
        universe: Universe,
        granules: Sequence[SubsetMask],
        lower_fn: Callable[[int], int],
        upper_fn: Callable[[int], int],
        name: str = "custom",
    ):
        for g in granules:
            if g.universe != universe:
                raise UniverseMismatchError("granule universe differs from space")
        self.universe = universe
        self.granules = tuple(sorted(granules, key=lambda g: g.bits))
        self.name = name
        self._lower_fn = lower_fn
        self._upper_fn = upper_fn
        self._lower_memo: dict[int, int] = {}
        self._upper_memo: dict[int, int] = {}
        self._definite_cache: dict[str, tuple[SubsetMask, ...]] = {}
        if universe.size <= _MATERIALIZE_CAP:
            for bits in range(1 << universe.size):
                self._lower_memo[bits] = lower_fn(bits)
                self._upper_memo[bits] = upper_fn(bits)

    # raw-bits entry points are the hot path for the suites
    def lower_bits(self, bits: int) -> int:
        memo = self._lower_memo
        if bits not in memo:
            memo[bits] = self._lower_fn(bits)
        return memo[bits]

    def upper_bits(self, bits: int) -> int:
        memo = self._upper_memo
        if bits not in memo:
            memo[bits] = self._upper_fn(bits)
        return memo[bits]

    def lower(self, x: SubsetMask) -> SubsetMask:
        return self.universe.mask(self.lower_bits(x.bits))

    def upper(self, x: SubsetMask) -> SubsetMask:
        return self.universe.mask(self.upper_bits(x.bits))

    def is_definite_bits(self, bits: int, which: str = "definite") -> bool:
        if which == "lower":
            return self.lower_bits(bits) == bits
        if which == "upper":
            return self.upper_bits(bits) == bits
        return self.lower_bits(bits) == bits == self.upper_bits(bits)

    def definite_elements(self, which: str = "definite") -> tuple[SubsetMask, ...]:
        if which not in self._definite_cache:
            self._definite_cache[which] = tuple(
                m
                for m in self.universe.all_masks()
                if self.is_definite_bits(m.bits, which)
            )
        return self._definite_cache[which]

    # construction recipes ---------------------------------------------------

    @classmethod
    def from_equivalence(cls, eq: BinaryRelation) -> "OperatorSpace":
        eq.require_equivalence()
        classes = eq.classes()

        def low(bits: int) -> int:
            out = 0
            for c in classes:
                if c.bits & ~bits == 0:
                    out |= c.bits
            return out

        def up(bits: int) -> int:
            out = 0
            for c in classes:
                if c.bits & bits:
                    out |= c.bits
            return out

        return cls(eq.universe, classes, low, up, name="classical")

    @classmethod
    def from_cover(
        cls, cover: CoverSpace, upper_kind: str = "u1"
    ) -> "OperatorSpace":
        u = cover.universe

        def low(bits: int) -> int:
            return lower_l1(u.mask(bits), cover).bits

        def up(bits: int) -> int:
            return upper(u.mask(bits), cover, upper_kind).bits

        return cls(u, cover.members, low, up, name=f"l1/{upper_kind}")

    @classmethod
    def from_tables(
        cls,
        universe: Universe,
        granules: Sequence[SubsetMask],
        lower_table: dict[int, int],
        upper_table: dict[int, int],
        name: str = "tables",
    ) -> "OperatorSpace":
        return cls(
            universe,
            granules,
            lambda bits: lower_table[bits],
            lambda bits: upper_table[bits],
            name=name,
        )


class GranularOperatorSpace(OperatorSpace):
    """OperatorSpace whose construction axioms are verified up front."""

    def __init__(self, *args, exhaustive_cap: int = 10, seed: int = 0, **kwargs):
        super().__init__(*args, **kwargs)
        report = check_operator_axioms(self, exhaustive_cap=exhaustive_cap, seed=seed)
        if not report.passed():
            bad = [r for r in report.results if r.verdict == "fail"]
            raise OperatorAxiomError(
                "; ".join(f"{r.name}: {r.witnesses[0]}" for r in bad if r.witnesses)
                or bad[0].name
            )

    @classmethod
    def from_equivalence(cls, eq: BinaryRelation) -> "GranularOperatorSpace":
        base = OperatorSpace.from_equivalence(eq)
        return cls(
            base.universe, base.granules, base._lower_fn, base._upper_fn,
            name=base.name,
        )

    @classmethod
    def from_cover(
        cls, cover: CoverSpace, upper_kind: str = "u1"
    ) -> "GranularOperatorSpace":
        base = OperatorSpace.from_cover(cover, upper_kind)
        return cls(
            base.universe, base.granules, base._lower_fn, base._upper_fn,
            name=base.name,
        )

    @classmethod
    def from_tables(cls, *args, **kwargs) -> "GranularOperatorSpace":
        base = OperatorSpace.from_tables(*args, **kwargs)
        return cls(
            base.universe, base.granules, base._lower_fn, base._upper_fn,
            name=base.name,
        )


def check_operator_axioms(
    space: OperatorSpace, exhaustive_cap: int = 10, samples: int = 2000, seed: int = 0
) -> SuiteReport:
    """The six operator axioms, exhaustively up to the cap, sampled above."""
    n = space.universe.size
    results: list[LawResult] = []
    exhaustive = n <= exhaustive_cap
    rng = random.Random(seed)
    full = (1 << n) - 1

    if exhaustive:
        pool = list(range(1 << n))
    else:
        pool = [rng.randrange(1 << n) for _ in range(samples)]

    def law(name: str, witnesses: list[str]) -> None:
        results.append(
            LawResult(
                name=name,
                verdict="pass" if not witnesses else "fail",
                checked=len(pool),
                witnesses=tuple(witnesses[:3]),
            )
        )

    w: list[str] = []
    for bits in pool:
        if space.lower_bits(bits) & ~bits:
            w.append(repr(space.universe.mask(bits)))
            break
    law("lower-contractive", w)

    w = []
    for bits in pool:
        lo = space.lower_bits(bits)
        if space.lower_bits(lo) != lo:
            w.append(repr(space.universe.mask(bits)))
            break
    law("lower-idempotent", w)

    w = []
    for bits in pool:
        up = space.upper_bits(bits)
        if up & ~space.upper_bits(up):
            w.append(repr(space.universe.mask(bits)))
            break
    law("upper-expands-under-iteration", w)

    # monotonicity over subset pairs: walk supersets of each sampled mask
    w_lo: list[str] = []
    w_up: list[str] = []
    if exhaustive:
        for b in range(1 << n):
            rest = full & ~b
            sup = rest
            while True:
                bigger = b | sup
                if space.lower_bits(b) & ~space.lower_bits(bigger):
                    w_lo.append(
                        f"{space.universe.mask(b)!r} vs {space.universe.mask(bigger)!r}"
                    )
                if space.upper_bits(b) & ~space.upper_bits(bigger):
                    w_up.append(
                        f"{space.universe.mask(b)!r} vs {space.universe.mask(bigger)!r}"
                    )
                if w_lo and w_up or sup == 0:
                    break
                sup = (sup - 1) & rest
            if w_lo and w_up:
                break
    else:
        for _ in range(samples):
            b = rng.randrange(1 << n)
            bigger = b | rng.randrange(1 << n)
            if space.lower_bits(b) & ~space.lower_bits(bigger):
                w_lo.append(
                    f"{space.universe.mask(b)!r} vs {space.universe.mask(bigger)!r}"
                )
            if space.upper_bits(b) & ~space.upper_bits(bigger):
                w_up.append(
                    f"{space.universe.mask(b)!r} vs {space.universe.mask(bigger)!r}"
                )
    law("lower-monotone", w_lo)
    law("upper-monotone", w_up)

    w = []
    if space.lower_bits(0) != 0 or space.upper_bits(0) != 0:
        w.append("empty set not fixed")
    law("empty-set-fixed", w)
    # the top bounds (lower/upper of the full set stay inside the carrier)
    # hold structurally for bitmask operators
    results.append(
        LawResult(
            name="top-bounded",
            verdict="pass",
            checked=1,
            witnesses=(),
            note="holds structurally for mask-valued operators",
        )
    )
    return SuiteReport(
        suite="operator-axioms",
        results=results,
        meta={"space": space.name, "mode": "exhaustive" if exhaustive else "sampled"},
    )


# ---------------------------------------------------------------------------
# admissible granulations


def term_closure(universe: Universe, granules: Sequence[SubsetMask]) -> frozenset[int]:
    """Close the granules plus empty/full under union, intersection,
    complement.  The closure lives inside the power set, so it is finite."""
    full = (1 << universe.size) - 1
    current = {0, full} | {g.bits for g in granules}
    changed = True
    while changed:
        changed = False
        items = list(current)
        for i, a in enumerate(items):
            c = full & ~a
            if c not in current:
                current.add(c)
                changed = True
            for b in items[i:]:
                for v in (a | b, a & b):
                    if v not in current:
                        current.add(v)
                        changed = True
    return frozenset(current)


def validate_admissible(space: OperatorSpace, exhaustive_cap: int = 10) -> SuiteReport:
    """Weak representability, lower stability, full underlap.

    Underlap is quantified literally over all ordered granule pairs,
    including equal ones; the distinct-pairs-only variant is reported as a
    separate entry because the two readings can disagree.
    """
    n = space.universe.size
    if n > exhaustive_cap:
        raise OperatorAxiomError("admissibility check limited to small universes")
    closure = term_closure(space.universe, space.granules)
    results: list[LawResult] = []

    wra_wit: list[str] = []
    for bits in range(1 << n):
        if space.lower_bits(bits) not in closure:
            wra_wit.append(f"lower of {space.universe.mask(bits)!r} not granule-term")
            break
        if space.upper_bits(bits) not in closure:
            wra_wit.append(f"upper of {space.universe.mask(bits)!r} not granule-term")
            break
    results.append(
        LawResult(
            name="weak-representability",
            verdict="pass" if not wra_wit else "fail",
            checked=1 << n,
            witnesses=tuple(wra_wit),
        )
    )

    ls_wit: list[str] = []
    for g in space.granules:
        for bits in range(1 << n):
            if g.bits & ~bits == 0 and g.bits & ~space.lower_bits(bits):
                ls_wit.append(f"b={g!r}, a={space.universe.mask(bits)!r}")
                break
        if ls_wit:
            break
    results.append(
        LawResult(
            name="lower-stability",
            verdict="pass" if not ls_wit else "fail",
            checked=len(space.granules) << n,
            witnesses=tuple(ls_wit),
        )
    )

    def underlap(pairs: Iterable[tuple[SubsetMask, SubsetMask]]) -> list[str]:
        wit = []
        for a, b in pairs:
            found = False
            for bits in range(1 << n):
                if (
                    a.bits & ~bits == 0
                    and a.bits != bits
                    and b.bits & ~bits == 0
                    and b.bits != bits
                    and space.lower_bits(bits) == bits == space.upper_bits(bits)
                ):
                    found = True
                    break
            if not found:
                wit.append(f"a={a!r}, b={b!r}")
                break
        return wit

    all_pairs = [(a, b) for a in space.granules for b in space.granules]
    fu_wit = underlap(all_pairs)
    results.append(
        LawResult(
            name="full-underlap",
            verdict="pass" if not fu_wit else "fail",
            checked=len(all_pairs),
            witnesses=tuple(fu_wit),
        )
    )
    distinct = [(a, b) for a, b in all_pairs if a.bits != b.bits]
    fud_wit = underlap(distinct)
    results.append(
        LawResult(
            name="full-underlap-distinct-pairs",
            verdict="pass" if not fud_wit else "fail",
            checked=len(distinct),
            witnesses=tuple(fud_wit),
            note="secondary reading quantifying over distinct granule pairs only",
        )
    )
    return SuiteReport(
        suite="admissible-granulation",
        results=results,
        meta={"space": space.name},
    )


# ---------------------------------------------------------------------------
# point granules and the general membership degree


def point_granule(space: OperatorSpace, x: int, kind: str) -> SubsetMask | None:
    """The granule a point generates under the chosen schema.

    Returns None only for kind="partial-meet" when the meet is not itself a
    granule (a non-fatal signal); every other undefined case raises.
    """
    if kind not in GAMMA_KINDS:
        raise GranuleError(f"unknown point-granule kind {kind!r}")
    containing = [g for g in space.granules if x in g]
    if not containing:
        raise GranuleError(
            f"element {space.universe.labels[x]!r} lies in no granule"
        )
    meet = containing[0].bits
    join = 0
    for g in containing:
        meet &= g.bits
        join |= g.bits
    u = space.universe
    if kind == "meet":
        return u.mask(meet)
    if kind == "join":
        return u.mask(join)
    if kind == "choice":
        # deterministic choice: lexicographically least by sorted index tuple
        return min(containing, key=lambda g: g.lex_key())
    if kind == "meet-upper":
        return u.mask(space.upper_bits(meet))
    if kind == "join-lower":
        return u.mask(space.lower_bits(join))
    # partial-meet
    if any(g.bits == meet for g in space.granules):
        return u.mask(meet)
    return None


def general_rough_membership(
    x: int, a: SubsetMask, space: OperatorSpace, kind: str = "meet"
) -> Fraction:
    """|gamma(x) meet A| / |gamma(x)| as an exact rational."""
    gamma = point_granule(space, x, kind)
    if gamma is None or gamma.bits == 0:
        raise UndefinedGammaError(
            f"gamma({space.universe.labels[x]}) undefined or empty for kind {kind!r}"
        )
    return Fraction((gamma & a).bits.bit_count(), len(gamma))


@dataclass(frozen=True)
class InducedRelations:
    """The three equivalences induced by the membership degree.

    Blocks are ordered by ascending degree value, which is the order the
    quotient inherits from comparing representatives.
    """

    by_subset: dict[int, tuple[tuple[int, ...], ...]]
    by_point: dict[int, tuple[tuple[int, ...], ...]]
    global_blocks: tuple[tuple[tuple[int, int], ...], ...]


def induced_relations(space: OperatorSpace, kind: str = "meet") -> InducedRelations:
    n = space.universe.size
    values: dict[tuple[int, int], Fraction] = {}
    for x in range(n):
        for bits in range(1 << n):
            values[(x, bits)] = general_rough_membership(
                x, space.universe.mask(bits), space, kind
            )

    by_subset: dict[int, tuple[tuple[int, ...], ...]] = {}
    for bits in range(1 << n):
        groups: dict[Fraction, list[int]] = {}
        for x in range(n):
            groups.setdefault(values[(x, bits)], []).append(x)
        by_subset[bits] = tuple(
            tuple(groups[v]) for v in sorted(groups)
        )

    by_point: dict[int, tuple[tuple[int, ...], ...]] = {}
    for x in range(n):
        groups2: dict[Fraction, list[int]] = {}
        for bits in range(1 << n):
            groups2.setdefault(values[(x, bits)], []).append(bits)
        by_point[x] = tuple(tuple(groups2[v]) for v in sorted(groups2))

    groups3: dict[Fraction, list[tuple[int, int]]] = {}
    for key, v in values.items():
        groups3.setdefault(v, []).append(key)
    global_blocks = tuple(
        tuple(sorted(groups3[v])) for v in sorted(groups3)
    )
    return InducedRelations(by_subset=by_subset, by_point=by_point,
                            global_blocks=global_blocks)


def omega_property_check(
    space: OperatorSpace, kind: str = "meet", exhaustive_cap: int = 8
) -> SuiteReport:
    """Membership-degree laws; the granular-monotony check is a diagnostic
    whose witnesses are emitted rather than asserted away."""
    n = space.universe.size
    if n > exhaustive_cap:
        raise OperatorAxiomError("membership property check limited to small universes")
    u = space.universe
    gammas: dict[int, SubsetMask | None] = {}
    for x in range(n):
        try:
            gammas[x] = point_granule(space, x, kind)
        except GranuleError:
            gammas[x] = None
    points = [x for x in range(n) if gammas[x] is not None and gammas[x].bits]

    results: list[LawResult] = []
    mono_wit: list[str] = []
    for x in points:
        for b in range(1 << n):
            for a in submasks(b):
                va = general_rough_membership(x, u.mask(a), space, kind)
                vb = general_rough_membership(x, u.mask(b), space, kind)
                if va > vb:
                    mono_wit.append(f"x={u.labels[x]}, A={u.mask(a)!r}, B={u.mask(b)!r}")
                    break
            if mono_wit:
                break
        if mono_wit:
            break
    results.append(LawResult("monotony", "pass" if not mono_wit else "fail",
                             len(points) * 3 ** n, tuple(mono_wit)))

    empty_wit = [
        u.labels[x]
        for x in points
        if general_rough_membership(x, u.empty(), space, kind) != 0
    ]
    results.append(LawResult("empty-set", "pass" if not empty_wit else "fail",
                             len(points), tuple(empty_wit)))

    top_wit = [
        u.labels[x]
        for x in points
        if general_rough_membership(x, u.full(), space, kind) != 1
    ]
    results.append(LawResult("top", "pass" if not top_wit else "fail",
                             len(points), tuple(top_wit)))

    ge_wit: list[str] = []
    for x in points:
        for y in points:
            if gammas[x].bits != gammas[y].bits:
                continue
            for bits in range(1 << n):
                a = u.mask(bits)
                if general_rough_membership(x, a, space, kind) != \
                        general_rough_membership(y, a, space, kind):
                    ge_wit.append(f"x={u.labels[x]}, y={u.labels[y]}, A={a!r}")
                    break
            if ge_wit:
                break
        if ge_wit:
            break
    results.append(LawResult("granular-equality", "pass" if not ge_wit else "fail",
                             len(points) ** 2, tuple(ge_wit)))

    gm_wit: list[str] = []
    for x in points:
        for y in points:
            if x == y or gammas[x].bits & ~gammas[y].bits:
                continue
            for bits in range(1 << n):
                a = u.mask(bits)
                if general_rough_membership(x, a, space, kind) > \
                        general_rough_membership(y, a, space, kind):
                    gm_wit.append(f"x={u.labels[x]}, y={u.labels[y]}, A={a!r}")
                    break
    results.append(
        LawResult(
            name="granular-monotony",
            verdict="witnesses-found" if gm_wit else "no-witness",
            checked=len(points) ** 2 << n,
            witnesses=tuple(gm_wit[:5]),
            kind="search",
            note="diagnostic only; witnesses are reported, not asserted away",
        )
    )
    return SuiteReport(
        suite="membership-properties",
        results=results,
        meta={"space": space.name, "gamma": kind},
    )


# ---------------------------------------------------------------------------
# regions and rough-object classification


@dataclass(frozen=True)
class RegionReport:
    positive: SubsetMask
    negative: SubsetMask
    strong_negative: SubsetMask
    kind: str


def regions(x: SubsetMask, space: OperatorSpace) -> RegionReport:
    pos = space.lower(x)
    neg = space.upper(x).complement()
    sneg = space.universe.mask(
        space.upper_bits(space.upper_bits(x.bits))
    ).complement()
    if pos.bits and neg.bits:
        kind = "roughly-definable"
    elif pos.bits:
        kind = "externally-undefinable"
    elif neg.bits:
        kind = "internally-undefinable"
    else:
        kind = "totally-undefinable"
    return RegionReport(positive=pos, negative=neg, strong_negative=sneg, kind=kind)


@dataclass(frozen=True)
class CensusReport:
    """Counts and inventories of the rough-object notions on one space."""

    counts: dict[str, int]
    definite: tuple[SubsetMask, ...]
    definite_pairs: tuple[tuple[SubsetMask, SubsetMask], ...]
    approximation_pairs: tuple[tuple[SubsetMask, SubsetMask], ...]
    orthopairs: tuple[tuple[SubsetMask, SubsetMask], ...]
    triples: tuple[tuple[SubsetMask, SubsetMask, SubsetMask], ...]


def rough_object_census(space: OperatorSpace, exhaustive_cap: int = 8) -> CensusReport:
    n = space.universe.size
    if n > exhaustive_cap:
        raise OperatorAxiomError("census limited to small universes")
    u = space.universe
    counts = {k: 0 for k in
              ("lower_rough", "upper_rough", "weakly_upper_rough", "boundary_rough",
               "non_definite", "interval_elements", "definite_interval_elements")}
    definite: list[SubsetMask] = []
    approx_pairs: set[tuple[int, int]] = set()
    ortho: set[tuple[int, int]] = set()
    triples: set[tuple[int, int, int]] = set()
    for bits in range(1 << n):
        lo = space.lower_bits(bits)
        up = space.upper_bits(bits)
        if lo != bits:
            counts["lower_rough"] += 1
        if up != bits:
            counts["upper_rough"] += 1
        if space.upper_bits(up) != up:
            counts["weakly_upper_rough"] += 1
        if lo != up:
            counts["boundary_rough"] += 1
            approx_pairs.add((lo, up))
        if up & ~lo:
            counts["non_definite"] += 1
        if space.is_definite_bits(bits):
            definite.append(u.mask(bits))
        ortho.add((lo, ((1 << n) - 1) & ~up))
        triples.add((lo, space.upper_bits(lo), up))

    def_pairs = [
        (a, b)
        for a in definite
        for b in definite
        if a.bits != b.bits and a.bits & ~b.bits == 0
    ]
    # open-interval inventories: elements strictly between the endpoints
    for lo, up in approx_pairs:
        for mid in submasks(up):
            if mid != lo and mid != up and lo & ~mid == 0:
                counts["interval_elements"] += 1
    for a, b in def_pairs:
        for mid in submasks(b.bits):
            if mid != a.bits and mid != b.bits and a.bits & ~mid == 0:
                counts["definite_interval_elements"] += 1
    counts["definite"] = len(definite)
    counts["definite_pairs"] = len(def_pairs)
    counts["approximation_pairs"] = len(approx_pairs)
    counts["orthopairs"] = len(ortho)
    counts["triples"] = len(triples)
    return CensusReport(
        counts=counts,
        definite=tuple(definite),
        definite_pairs=tuple(def_pairs),
        approximation_pairs=tuple(
            (u.mask(a), u.mask(b)) for a, b in sorted(approx_pairs)
        ),
        orthopairs=tuple((u.mask(a), u.mask(b)) for a, b in sorted(ortho)),
        triples=tuple(
            (u.mask(a), u.mask(b), u.mask(c)) for a, b, c in sorted(triples)
        ),
    )


@dataclass(frozen=True)
class RoughOrderClass:
    lower: SubsetMask
    upper: SubsetMask
    members: tuple[SubsetMask, ...]


@dataclass(frozen=True)
class RoughOrder:
    """Quotient of the power set by equal approximations, ordered by
    componentwise inclusion of the (lower, upper) pair."""

    classes: tuple[RoughOrderClass, ...]
    is_partial_order: bool
    bottom: tuple[SubsetMask, SubsetMask]
    top: tuple[SubsetMask, SubsetMask]
    bounded: bool

    def leq(self, i: int, j: int) -> bool:
        a, b = self.classes[i], self.classes[j]
        return a.lower.issubset(b.lower) and a.upper.issubset(b.upper)


def basic_rough_order(space: OperatorSpace, exhaustive_cap: int = 8) -> RoughOrder:
    n = space.universe.size
    if n > exhaustive_cap:
        raise OperatorAxiomError("rough order limited to small universes")
    u = space.universe
    groups: dict[tuple[int, int], list[SubsetMask]] = {}
    for bits in range(1 << n):
        key = (space.lower_bits(bits), space.upper_bits(bits))
        groups.setdefault(key, []).append(u.mask(bits))
    classes = tuple(
        RoughOrderClass(u.mask(lo), u.mask(up), tuple(groups[(lo, up)]))
        for lo, up in sorted(groups)
    )

    def leq(a: RoughOrderClass, b: RoughOrderClass) -> bool:
        return a.lower.issubset(b.lower) and a.upper.issubset(b.upper)

    ok = True
    for a in classes:
        if not leq(a, a):
            ok = False
    for a in classes:
        for b in classes:
            if a is not b and leq(a, b) and leq(b, a):
                ok = False
            for c in classes:
                if leq(a, b) and leq(b, c) and not leq(a, c):
                    ok = False
    bottom = (u.empty(), u.empty())
    top = (u.mask(space.lower_bits((1 << n) - 1)),
           u.mask(space.upper_bits((1 << n) - 1)))
    bounded = all(
        bottom[0].issubset(c.lower) and bottom[1].issubset(c.upper)
        and c.lower.issubset(top[0]) and c.upper.issubset(top[1])
        for c in classes
    )
    return RoughOrder(classes=classes, is_partial_order=ok,
                      bottom=bottom, top=top, bounded=bounded)


# ---------------------------------------------------------------------------
# dependence spaces


@dataclass(frozen=True)
class CongruenceVerdict:
    ok: bool
    witness: str


def check_dependence_space(
    universe: Universe, blocks: Sequence[Sequence[SubsetMask]]
) -> CongruenceVerdict:
    """Is the given partition of the power set a union-congruence?"""
    n = universe.size
    block_of: dict[int, int] = {}
    for bi, block in enumerate(blocks):
        for m in block:
            if m.bits in block_of:
                raise RelationError("blocks overlap; not a partition of the power set")
            block_of[m.bits] = bi
    if len(block_of) != 1 << n:
        raise RelationError("blocks do not cover the power set")
    for block_a in blocks:
        for block_b in blocks:
            expected: int | None = None
            for x in block_a:
                for y in block_b:
                    target = block_of[x.bits | y.bits]
                    if expected is None:
                        expected = target
                    elif target != expected:
                        return CongruenceVerdict(
                            ok=False,
                            witness=(
                                f"x={block_a[0]!r}, x'={x!r}, y={block_b[0]!r}, "
                                f"y'={y!r} map to different blocks"
                            ),
                        )
    return CongruenceVerdict(ok=True, witness="")
