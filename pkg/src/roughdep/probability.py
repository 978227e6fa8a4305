"""Exact-rational finite probability spaces and set-level dependence.

A space is an atom partition with Fraction weights summing to one; events
are atom unions.  The dependence function is the covariance of indicator
variables, p(x meet y) - p(x)p(y), and its sign yields the positive and
negative dependence predicates.  All identities are checked with rational
equality; strict-inequality classifications are exact, never rounded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .core import SubsetMask, Universe
from .errors import CrossSpaceError, ProbabilityError
from .reports import LawResult, SuiteReport, fmt_fraction

POSITIVE = "positive"
NEGATIVE = "negative"
INDEPENDENT = "independent"


@dataclass(frozen=True)
class FiniteProbSpace:
    """Atom partition of a universe with exact nonnegative weights."""

    universe: Universe
    atoms: tuple[SubsetMask, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.weights):
            raise ProbabilityError("one weight per atom required")
        seen = 0
        for a in self.atoms:
            if a.universe != self.universe:
                raise ProbabilityError("atom universe differs from space")
            if a.bits == 0:
                raise ProbabilityError("atoms must be nonempty")
            if a.bits & seen:
                raise ProbabilityError("atoms must be disjoint")
            seen |= a.bits
        if seen != (1 << self.universe.size) - 1:
            raise ProbabilityError("atoms must cover the universe")
        total = Fraction(0)
        for w in self.weights:
            if not isinstance(w, Fraction):
                raise ProbabilityError("weights must be exact Fractions")
            if w < 0:
                raise ProbabilityError("weights must be nonnegative")
            total += w
        if total != 1:
            raise ProbabilityError(f"weights sum to {total}, not 1")

    @classmethod
    def uniform(cls, labels: Sequence[str]) -> "FiniteProbSpace":
        u = Universe(tuple(labels))
        n = u.size
        return cls(
            u,
            tuple(u.singleton(i) for i in range(n)),
            tuple(Fraction(1, n) for _ in range(n)),
        )

    @classmethod
    def weighted(
        cls, labels: Sequence[str], weights: Sequence[Fraction]
    ) -> "FiniteProbSpace":
        u = Universe(tuple(labels))
        return cls(u, tuple(u.singleton(i) for i in range(u.size)), tuple(weights))

    @property
    def atom_count(self) -> int:
        return len(self.atoms)

    @cached_property
    def _p_by_atombits(self) -> tuple[Fraction, ...]:
        k = len(self.atoms)
        out = []
        for sel in range(1 << k):
            total = Fraction(0)
            for i in range(k):
                if sel >> i & 1:
                    total += self.weights[i]
            out.append(total)
        return tuple(out)

    def atombits_of(self, mask: SubsetMask) -> int:
        """Atom-index bitmask of an event; rejects non-events."""
        if mask.universe != self.universe:
            raise CrossSpaceError("mask universe differs from space")
        sel = 0
        rest = mask.bits
        for i, atom in enumerate(self.atoms):
            if atom.bits & rest:
                if atom.bits & ~mask.bits:
                    raise ProbabilityError(f"{mask!r} is not an atom union")
                sel |= 1 << i
                rest &= ~atom.bits
        if rest:
            raise ProbabilityError(f"{mask!r} is not an atom union")
        return sel

    def mask_of_atombits(self, sel: int) -> SubsetMask:
        bits = 0
        for i, atom in enumerate(self.atoms):
            if sel >> i & 1:
                bits |= atom.bits
        return self.universe.mask(bits)

    def is_event(self, mask: SubsetMask) -> bool:
        try:
            self.atombits_of(mask)
            return True
        except ProbabilityError:
            return False

    def p_bits(self, sel: int) -> Fraction:
        return self._p_by_atombits[sel]

    def event(self, arg) -> "Event":
        if isinstance(arg, Event):
            return arg
        if isinstance(arg, SubsetMask):
            return Event(self, arg)
        return Event(self, self.universe.subset(arg))

    def event_of_atombits(self, sel: int) -> "Event":
        return Event(self, self.mask_of_atombits(sel))

    def events(self) -> tuple["Event", ...]:
        return tuple(
            self.event_of_atombits(sel) for sel in range(1 << self.atom_count)
        )

    def empty_event(self) -> "Event":
        return Event(self, self.universe.empty())

    def full_event(self) -> "Event":
        return Event(self, self.universe.full())


@dataclass(frozen=True)
class Event:
    """An atom union in one probability space."""

    space: FiniteProbSpace
    mask: SubsetMask

    def __post_init__(self):
        self.space.atombits_of(self.mask)  # membership check

    @property
    def p(self) -> Fraction:
        return self.space.p_bits(self.space.atombits_of(self.mask))

    @property
    def atombits(self) -> int:
        return self.space.atombits_of(self.mask)

    def _check(self, other: "Event") -> None:
        if self.space != other.space:
            raise CrossSpaceError("events live in different spaces")

    def __and__(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.space, self.mask & other.mask)

    def __or__(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.space, self.mask | other.mask)

    def complement(self) -> "Event":
        return Event(self.space, self.mask.complement())

    @property
    def is_proper(self) -> bool:
        return 0 != self.mask.bits != (1 << self.mask.universe.size) - 1

    def __repr__(self) -> str:
        return repr(self.mask)


def covariance(x: Event, y: Event) -> Fraction:
    """p(x meet y) - p(x)p(y), the indicator covariance; exact."""
    x._check(y)
    return (x & y).p - x.p * y.p


def dependence_sign(x: Event, y: Event) -> str:
    d = covariance(x, y)
    if d > 0:
        return POSITIVE
    if d < 0:
        return NEGATIVE
    return INDEPENDENT


def positively_dependent(x: Event, y: Event) -> bool:
    return covariance(x, y) > 0


def negatively_dependent(x: Event, y: Event) -> bool:
    return covariance(x, y) < 0


def weakly_mutually_exclusive(x: Event, y: Event) -> bool:
    return (x & y).p == 0


def symmetric_difference_distance(a: Event, b: Event) -> Fraction:
    """Measure of the symmetric difference; a pseudo-metric on events."""
    a._check(b)
    return Event(a.space, a.mask ^ b.mask).p


# ---------------------------------------------------------------------------
# covariance law suite


def covariance_law_suite(space: FiniteProbSpace) -> SuiteReport:
    """All covariance identities, exhaustively over the event lattice.

    The subset and disjointness laws are checked through their rational
    reformulations, p(x)p(y^c) and -p(x)p(y), together with the square
    identity (2p(x)-1)^2 = 1 - 4*cov(x,x) that grounds the radical form.
    """
    k = space.atom_count
    events = list(range(1 << k))
    p = space._p_by_atombits
    full = (1 << k) - 1
    cov = {}
    for x in events:
        for y in events:
            cov[(x, y)] = p[x & y] - p[x] * p[y]

    def name_of(sel: int) -> str:
        return repr(space.mask_of_atombits(sel))

    results: list[LawResult] = []

    def law(name: str, fails: list[str], checked: int, note: str = "") -> None:
        results.append(
            LawResult(name, "pass" if not fails else "fail", checked,
                      tuple(fails[:3]), note=note)
        )

    pairs = len(events) ** 2
    w = [
        f"x={name_of(x)}, y={name_of(y)}"
        for x in events
        for y in events
        if (cov[(x, y)] == 0) != (p[x & y] == p[x] * p[y])
    ]
    law("zero-iff-product", w, pairs)

    w = [
        f"x={name_of(x)}, y={name_of(y)}"
        for x in events
        for y in events
        if p[x] == 0 and cov[(x, y)] != 0
    ]
    law("null-annihilates", w, pairs)

    w = [
        f"x={name_of(x)}, y={name_of(y)}"
        for x in events
        for y in events
        if cov[(x, y)] != cov[(y, x)]
    ]
    law("symmetry", w, pairs)

    w = []
    for x, y, z in itertools.product(events, repeat=3):
        if cov[(x | y, z)] != cov[(x, z)] + cov[(y, z)] - cov[(x & y, z)]:
            w.append(f"x={name_of(x)}, y={name_of(y)}, z={name_of(z)}")
            break
    law("union-additivity", w, len(events) ** 3)

    w = [
        f"x={name_of(x)}, y={name_of(y)}"
        for x in events
        for y in events
        if cov[(x, y)] != -cov[(x, full & ~y)]
    ]
    law("complement-negates", w, pairs)

    w = [
        f"x={name_of(x)}, y={name_of(y)}"
        for x in events
        for y in events
        if cov[(x, y)] != cov[(full & ~x, full & ~y)]
    ]
    law("double-complement", w, pairs)

    w = [
        f"x={name_of(x)}"
        for x in events
        if cov[(x, x)] != p[x] - p[x] * p[x]
    ]
    law("self-covariance", w, len(events))

    w = [
        f"x={name_of(x)}"
        for x in events
        if cov[(x, 0)] != 0 or cov[(x, full)] != 0
    ]
    law("unity", w, len(events))

    w = []
    checked = 0
    for x, f, y, b in itertools.product(events, repeat=4):
        if x & ~f == 0 and x != f and y & ~b == 0 and x & y == f & b:
            checked += 1
            if cov[(f, b)] > cov[(x, y)]:
                w.append(
                    f"x={name_of(x)}, f={name_of(f)}, y={name_of(y)}, b={name_of(b)}"
                )
                break
    law("shrinking-raises", w, checked,
        note="growing the operands while fixing the meet cannot raise the value")

    w = [
        f"x={name_of(x)}, y={name_of(y)}"
        for x in events
        for y in events
        if x & ~y == 0 and x != y and cov[(x, y)] != p[x] * p[full & ~y]
    ]
    law("proper-subset-product", w, pairs)

    w = [
        f"x={name_of(x)}"
        for x in events
        if (2 * p[x] - 1) ** 2 != 1 - 4 * cov[(x, x)]
    ]
    law("square-identity", w, len(events))

    w = [
        f"x={name_of(x)}, y={name_of(y)}"
        for x in events
        for y in events
        if x & y == 0 and cov[(x, y)] != -(p[x] * p[y])
    ]
    law("disjoint-product", w, pairs)

    return SuiteReport(
        suite="covariance-laws",
        results=results,
        meta={"atoms": str(k)},
    )


# ---------------------------------------------------------------------------
# sign predicate law suite


def sign_law_suite(space: FiniteProbSpace) -> SuiteReport:
    """Laws of the positive/negative dependence predicates over proper
    events.  Failures on degenerate margins (weight-zero events) are real
    witnesses and are reported, not suppressed; the claimed two-way split
    positive-or-negative is checked and refuted by exact-independence pairs
    when they exist."""
    k = space.atom_count
    p = space._p_by_atombits
    full = (1 << k) - 1
    events = list(range(1 << k))
    proper = [x for x in events if 0 != x != full]

    def pi(x: int, y: int) -> bool:
        return p[x] * p[y] < p[x & y]

    def sg(x: int, y: int) -> bool:
        return p[x & y] < p[x] * p[y]

    def name_of(sel: int) -> str:
        return repr(space.mask_of_atombits(sel))

    results: list[LawResult] = []

    def law(name: str, fails: list[str], checked: int, note: str = "") -> None:
        results.append(
            LawResult(name, "pass" if not fails else "fail", checked,
                      tuple(fails[:3]), note=note)
        )

    w = [f"x={name_of(x)}" for x in proper if not pi(x, x)]
    law("identity", w, len(proper),
        note="fails exactly where p(x) is 0 or 1 on a set-proper event")

    w = [
        f"x={name_of(x)}"
        for x in proper
        if pi(x, x) and not sg(x, full & ~x)
    ]
    law("co-identity", w, len(proper))

    w = []
    for x, y, z in itertools.product(proper, repeat=3):
        if pi(x, z | y) and not (pi(x, z) or pi(x, y)):
            w.append(f"x={name_of(x)}, y={name_of(y)}, z={name_of(z)}")
            break
    law("union-split", w, len(proper) ** 3)

    w = [
        f"x={name_of(x)}, y={name_of(y)}"
        for x in proper
        for y in proper
        if pi(x, full & ~y) != sg(y, x)
    ]
    law("mutual-complementation", w, len(proper) ** 2)

    w = [
        f"x={name_of(x)}, y={name_of(y)}"
        for x in proper
        for y in proper
        if pi(x, y) != pi(y, x)
    ]
    law("symmetry", w, len(proper) ** 2)

    found = []
    for x, y, a in itertools.product(proper, repeat=3):
        if pi(x, y) and y & ~a == 0 and y != a and not pi(x, a):
            found.append(f"x={name_of(x)}, y={name_of(y)}, a={name_of(a)}")
            break
    results.append(
        LawResult("incompatibility", "witnesses-found" if found else "no-witness",
                  len(proper) ** 3, tuple(found), kind="search",
                  note="positive dependence does not climb along supersets"))

    w = []
    for b in proper:
        for x in proper:
            if b & ~x == 0:
                continue
            if not any(pi(b, c) and not pi(c, x) for c in proper):
                w.append(f"b={name_of(b)}, x={name_of(x)}")
                break
        if w:
            break
    law("non-extensionality", w, len(proper) ** 2)

    w = []
    for x, y, a in itertools.product(proper, repeat=3):
        if x & y != 0 and pi(x, a) and pi(y, a) and not pi(x | y, a):
            w.append(f"x={name_of(x)}, y={name_of(y)}, a={name_of(a)}")
            break
    law("sum", w, len(proper) ** 3)

    w = []
    for x, y, a in itertools.product(proper, repeat=3):
        if x & y != 0 and sg(x, a) and sg(y, a) and not sg(x | y, a):
            w.append(f"x={name_of(x)}, y={name_of(y)}, a={name_of(a)}")
            break
    law("co-sum", w, len(proper) ** 3)

    w = [
        f"x={name_of(x)}, y={name_of(y)}"
        for x in proper
        for y in proper
        if x != 0 and x & ~y == 0 and not pi(x, y)
    ]
    law("set-coherence-subset", w, len(proper) ** 2,
        note="fails on weight-degenerate events; witnesses kept")

    w = [
        f"x={name_of(x)}, y={name_of(y)}"
        for x in proper
        for y in proper
        if x & y == 0 and not sg(x, y)
    ]
    law("set-coherence-disjoint", w, len(proper) ** 2,
        note="fails when a disjoint pair has a weight-zero side; witnesses kept")

    trich = [
        f"x={name_of(x)}, y={name_of(y)}"
        for x in proper
        for y in proper
        if not pi(x, y) and not sg(x, y)
    ]
    results.append(
        LawResult(
            name="two-way-split",
            verdict="refuted" if trich else "pass",
            checked=len(proper) ** 2,
            witnesses=tuple(trich[:5]),
            kind="diagnostic",
            note="set-proper pairs with exactly zero covariance refute the "
                 "claimed positive-or-negative split",
        )
    )
    return SuiteReport(
        suite="sign-laws",
        results=results,
        meta={"atoms": str(k)},
    )


# ---------------------------------------------------------------------------
# spectra, ideals, suprema


def common_spectrum(a: Event, b: Event) -> tuple[Event, ...]:
    """Events positively dependent on both arguments."""
    a._check(b)
    space = a.space
    return tuple(
        x for x in space.events()
        if positively_dependent(a, x) and positively_dependent(b, x)
    )


def common_co_spectrum(a: Event, b: Event) -> tuple[Event, ...]:
    """Events negatively dependent on both arguments."""
    a._check(b)
    space = a.space
    return tuple(
        x for x in space.events()
        if negatively_dependent(x, a) and negatively_dependent(x, b)
    )


@dataclass(frozen=True)
class ClauseVerdict:
    ok: bool
    failing_clause: int | None
    witness: str


def is_positive_ideal(space: FiniteProbSpace, members: Iterable[Event]) -> ClauseVerdict:
    """Clause 1: closed under positive dependence.  Clause 2: every member
    pair has common spectrum inside the collection."""
    K = {e.atombits for e in members}
    for z in sorted(K):
        ze = space.event_of_atombits(z)
        for x in space.events():
            if positively_dependent(ze, x) and x.atombits not in K:
                return ClauseVerdict(False, 1, f"z={ze!r}, x={x!r} escapes")
    for z in sorted(K):
        for b in sorted(K):
            ze, be = space.event_of_atombits(z), space.event_of_atombits(b)
            spectrum = {e.atombits for e in common_spectrum(ze, be)}
            if not spectrum & K:
                return ClauseVerdict(
                    False, 2, f"z={ze!r}, b={be!r} have no common spectrum inside"
                )
    return ClauseVerdict(True, None, "")


def is_negative_filter(space: FiniteProbSpace, members: Iterable[Event]) -> ClauseVerdict:
    F = {e.atombits for e in members}
    for z in sorted(F):
        ze = space.event_of_atombits(z)
        for x in space.events():
            if negatively_dependent(x, ze) and x.atombits not in F:
                return ClauseVerdict(False, 1, f"z={ze!r}, x={x!r} escapes")
    for z in sorted(F):
        for b in sorted(F):
            ze, be = space.event_of_atombits(z), space.event_of_atombits(b)
            spectrum = {e.atombits for e in common_co_spectrum(ze, be)}
            if not spectrum & F:
                return ClauseVerdict(
                    False, 2, f"z={ze!r}, b={be!r} have no common co-spectrum inside"
                )
    return ClauseVerdict(True, None, "")


@dataclass(frozen=True)
class SupremaReport:
    """All positive-dependence suprema of a pair, with the boundary facts."""

    spectrum: tuple[Event, ...]
    suprema: tuple[Event, ...]
    union_in_spectrum: bool
    spectrum_empty: bool
    boundary_gap: str


def dependence_suprema(x: Event, z: Event) -> SupremaReport:
    """Brute-force suprema inside the common spectrum.

    A supremum is a spectrum member positively dependent on every other
    member.  Whether the plain union qualifies is recorded; when it fails
    under the strict inequality (for instance at probability one) the gap
    is surfaced as a named witness.
    """
    x._check(z)
    spectrum = common_spectrum(x, z)
    spec_bits = {e.atombits for e in spectrum}
    suprema = tuple(
        c for c in spectrum
        if all(
            h.atombits == c.atombits or positively_dependent(c, h)
            for h in spectrum
        )
    )
    union = x | z
    union_in = union.atombits in spec_bits
    gap = ""
    if not union_in:
        gap = (
            f"union {union!r} (p={fmt_fraction(union.p)}) is not in the spectrum; "
            "the strict inequality fails there"
        )
    return SupremaReport(
        spectrum=spectrum,
        suprema=suprema,
        union_in_spectrum=union_in,
        spectrum_empty=not spectrum,
        boundary_gap=gap,
    )


@dataclass(frozen=True)
class IdealGeneration:
    """Fixed point of the neighborhood/supremum iteration with its trace."""

    fixed_point: tuple[Event, ...]
    is_ideal: bool
    failing_witness: str
    iterations: int
    trace: tuple[tuple[Event, ...], ...]


def generate_positive_ideal(
    space: FiniteProbSpace, seeds: Iterable[Event]
) -> IdealGeneration:
    """Iterate neighborhood closure then supremum closure to a fixed point.

    The neighborhood step adds every event positively dependent on a member
    (quantified over current members; quantifying over the whole lattice
    would make the map constant).  When the fixed point fails the spectrum
    clause, no ideal at all contains the seeds, and the witness pair names
    why.
    """
    seed_bits = {e.atombits for e in seeds}
    if not seed_bits:
        raise ProbabilityError("seed collection must be nonempty")
    all_events = space.events()
    pi_table: dict[int, set[int]] = {}
    for a in all_events:
        pi_table[a.atombits] = {
            b.atombits for b in all_events if positively_dependent(a, b)
        }
    sup_table: dict[tuple[int, int], frozenset[int]] = {}

    def suprema_of(a: int, b: int) -> frozenset[int]:
        key = (a, b)
        if key not in sup_table:
            report = dependence_suprema(
                space.event_of_atombits(a), space.event_of_atombits(b)
            )
            sup_table[key] = frozenset(e.atombits for e in report.suprema)
        return sup_table[key]

    current = frozenset(seed_bits)
    trace: list[tuple[Event, ...]] = []
    iterations = 0
    while True:
        iterations += 1
        grown = set(current)
        for z in current:
            grown |= pi_table[z]  # neighborhood step
        with_sups = set(grown)
        for a in grown:
            for b in grown:
                with_sups |= suprema_of(a, b)  # supremum step
        added = frozenset(with_sups) - current
        trace.append(
            tuple(space.event_of_atombits(s) for s in sorted(added))
        )
        if not added:
            break
        current = frozenset(with_sups)
        if iterations > len(all_events) + 1:
            raise ProbabilityError("ideal generation failed to stabilize")

    members = tuple(space.event_of_atombits(s) for s in sorted(current))
    verdict = is_positive_ideal(space, members)
    return IdealGeneration(
        fixed_point=members,
        is_ideal=verdict.ok,
        failing_witness="" if verdict.ok else verdict.witness,
        iterations=iterations,
        trace=tuple(trace),
    )


def distance_law_suite(space: FiniteProbSpace) -> SuiteReport:
    """Pseudo-metric laws of the symmetric-difference distance."""
    k = space.atom_count
    p = space._p_by_atombits
    events = list(range(1 << k))

    def d(a: int, b: int) -> Fraction:
        return p[a ^ b]

    results: list[LawResult] = []
    w = [str(a) for a in events if d(a, a) != 0]
    results.append(LawResult("self-distance-zero", "pass" if not w else "fail",
                             len(events), tuple(w[:3])))
    w = [
        f"({a},{b})" for a in events for b in events if d(a, b) != d(b, a)
    ]
    results.append(LawResult("symmetry", "pass" if not w else "fail",
                             len(events) ** 2, tuple(w[:3])))
    w = []
    for a, b, c in itertools.product(events, repeat=3):
        if d(a, c) > d(a, b) + d(b, c):
            w.append(f"({a},{b},{c})")
            break
    results.append(LawResult("triangle", "pass" if not w else "fail",
                             len(events) ** 3, tuple(w[:3])))
    return SuiteReport(suite="distance-laws", results=results,
                       meta={"atoms": str(k)})
