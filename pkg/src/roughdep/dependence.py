"""Rough dependence degrees over operator spaces.

The infimal degree of dependence of A on B is the largest definite set
inside the union of granules common to both; the supremal degree is the
least definite superset of that union.  Either side is undefined when the
required extremum does not exist among the definite elements, and the
undefined flag is a value, never an exception.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import BinaryRelation, SubsetMask, classical_approximations
from .granular import OperatorSpace
from .reports import LawResult, SuiteReport

PN_INDEPENDENT = "independent"
PN_DEPENDENT = "dependent"
PN_NEITHER = "neither"


@dataclass(frozen=True)
class DependenceDegree:
    value: SubsetMask | None
    mode: str  # infimal | supremal
    defined: bool


def common_granule_union(a: SubsetMask, b: SubsetMask, space: OperatorSpace) -> SubsetMask:
    bits = 0
    for g in space.granules:
        if g.bits & ~a.bits == 0 and g.bits & ~b.bits == 0:
            bits |= g.bits
    return space.universe.mask(bits)


def _definite_bits(space: OperatorSpace, which: str) -> list[int]:
    return [m.bits for m in space.definite_elements(which)]


def dependence_degree(
    a: SubsetMask,
    b: SubsetMask,
    space: OperatorSpace,
    mode: str = "infimal",
    definites: str = "definite",
) -> DependenceDegree:
    """Infimal or supremal dependence degree of a on b.

    definites picks the crispness notion: "definite" (both operators fix
    the set) or "lower" (the lower operator fixes it), the latter being the
    classical specialization.
    """
    union = common_granule_union(a, b, space).bits
    nu = _definite_bits(space, definites)
    if mode == "infimal":
        inside = [d for d in nu if d & ~union == 0]
        if not inside:
            return DependenceDegree(None, mode, False)
        fold = 0
        for d in inside:
            fold |= d
        # a maximum exists exactly when the fold is itself a candidate
        if fold in inside:
            return DependenceDegree(space.universe.mask(fold), mode, True)
        return DependenceDegree(None, mode, False)
    if mode == "supremal":
        above = [d for d in nu if union & ~d == 0]
        if not above:
            return DependenceDegree(None, mode, False)
        fold = (1 << space.universe.size) - 1
        for d in above:
            fold &= d
        if fold in above:
            return DependenceDegree(space.universe.mask(fold), mode, True)
        return DependenceDegree(None, mode, False)
    raise ValueError(f"unknown mode {mode!r}")


def pn_dependence(x: SubsetMask, y: SubsetMask, space: OperatorSpace) -> str:
    """Positive-negative (in)dependence of two subsets.

    Independent when each lower approximation avoids the other's upper
    approximation; dependent when both containments fail; the definitions
    are not complementary, so "neither" is a real outcome.
    """
    xl = space.lower_bits(x.bits)
    yl = space.lower_bits(y.bits)
    xu_c = space.universe.mask(space.upper_bits(x.bits)).complement().bits
    yu_c = space.universe.mask(space.upper_bits(y.bits)).complement().bits
    first = xl & ~yu_c == 0
    second = yl & ~xu_c == 0
    if first and second:
        return PN_INDEPENDENT
    if not first and not second:
        return PN_DEPENDENT
    return PN_NEITHER


# ---------------------------------------------------------------------------
# classical law suite


def _triples(n: int, exhaustive_cap: int, samples: int, seed: int):
    if n <= exhaustive_cap:
        return list(itertools.product(range(1 << n), repeat=3)), "exhaustive"
    rng = random.Random(seed)
    out = [
        (rng.randrange(1 << n), rng.randrange(1 << n), rng.randrange(1 << n))
        for _ in range(samples)
    ]
    return out, "sampled"


def classical_beta_suite(
    eq: BinaryRelation, exhaustive_cap: int = 4, samples: int = 300, seed: int = 0
) -> SuiteReport:
    """The nine classical dependence identities, all by set equality.

    The suite also runs a converse search: disjointness of the degrees does
    not force disjointness of the sets, and a concrete witness is recorded
    when one exists in the space.
    """
    eq.require_equivalence()
    space = OperatorSpace.from_equivalence(eq)
    n = space.universe.size
    u = space.universe
    full = (1 << n) - 1
    lo = space.lower_bits

    def beta_def(x: int, y: int, mode: str) -> int | None:
        d = dependence_degree(u.mask(x), u.mask(y), space, mode, definites="lower")
        return d.value.bits if d.defined else None

    triples, mode_label = _triples(n, exhaustive_cap, samples, seed)
    results: list[LawResult] = []

    def law(name: str, fails: list[str], checked: int) -> None:
        results.append(
            LawResult(name, "pass" if not fails else "fail", checked,
                      tuple(fails[:3]))
        )

    pair_pool = sorted({(x, y) for x, y, _ in triples})
    w: list[str] = []
    for x, y in pair_pool:
        bi = beta_def(x, y, "infimal")
        bs = beta_def(x, y, "supremal")
        if bi != lo(x) & lo(y) or bs != lo(x) & lo(y):
            w.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}")
            break
    law("degrees-collapse-to-lower-meet", w, len(pair_pool))

    w = []
    for x, _ in pair_pool:
        if beta_def(x, x, "infimal") != lo(x):
            w.append(f"x={u.mask(x)!r}")
            break
    law("self-degree-is-lower", w, len(pair_pool))

    w = []
    for x, y in pair_pool:
        if beta_def(x, y, "infimal") != beta_def(y, x, "infimal"):
            w.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}")
            break
    law("symmetry", w, len(pair_pool))

    w = []
    for x, y in pair_pool:
        bxy = beta_def(x, y, "infimal")
        if beta_def(bxy, x, "infimal") != bxy:
            w.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}")
            break
    law("degree-absorbs", w, len(pair_pool))

    w = []
    for x, y, z in triples:
        if beta_def(x, y, "infimal") & ~beta_def(x, y | z, "infimal"):
            w.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}, z={u.mask(z)!r}")
            break
    law("union-monotone", w, len(triples))

    w = []
    for x, y in pair_pool:
        if x & ~y == 0 and beta_def(x, y, "infimal") != lo(x):
            w.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}")
            break
    law("subset-collapse", w, len(pair_pool))

    w = []
    for x, y in pair_pool:
        if x & y == 0 and beta_def(x, y, "infimal") != 0:
            w.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}")
            break
    law("disjoint-gives-empty", w, len(pair_pool))

    w = []
    for x, _ in pair_pool:
        if beta_def(0, x, "infimal") != 0 or beta_def(x, full, "infimal") != lo(x):
            w.append(f"x={u.mask(x)!r}")
            break
    law("bottom-and-top", w, len(pair_pool))

    w = []
    for x, y, z in triples:
        if lo(y) & ~z == 0:
            if beta_def(x, y, "infimal") & ~beta_def(x, z, "infimal"):
                w.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}, z={u.mask(z)!r}")
                break
    law("lower-guarded-monotone", w, len(triples))

    w = []
    for x, y in pair_pool:
        b = beta_def(x, y, "infimal")
        if b != beta_def(lo(x), lo(y), "infimal") or b != beta_def(x, lo(y), "infimal"):
            w.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}")
            break
    law("lower-stable", w, len(pair_pool))

    converse: list[str] = []
    for x, y in pair_pool:
        if beta_def(x, y, "infimal") == 0 and x & y != 0:
            converse.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}")
            break
    results.append(
        LawResult(
            name="disjoint-converse-witness",
            verdict="witnesses-found" if converse else "no-witness",
            checked=len(pair_pool),
            witnesses=tuple(converse),
            kind="search",
            note="empty degree with overlapping sets; refutes the converse",
        )
    )
    return SuiteReport(
        suite="classical-dependence",
        results=results,
        meta={"mode": mode_label, "universe": str(n)},
    )


@dataclass(frozen=True)
class RecoveredApproximations:
    """Lower/upper operators rebuilt from intersection, complement and the
    dependence degree, with a pointwise comparison against the native pair."""

    lower_table: dict[int, int]
    upper_table: dict[int, int]
    matches: bool
    witness: str


def recover_approximations(eq: BinaryRelation) -> RecoveredApproximations:
    eq.require_equivalence()
    space = OperatorSpace.from_equivalence(eq)
    u = space.universe
    n = u.size
    full = (1 << n) - 1
    lower_table: dict[int, int] = {}
    upper_table: dict[int, int] = {}
    witness = ""
    matches = True
    for bits in range(1 << n):
        m = u.mask(bits)
        d = dependence_degree(m, m, space, "infimal", definites="lower")
        lower_table[bits] = d.value.bits
        mc = u.mask(full & ~bits)
        dc = dependence_degree(mc, mc, space, "infimal", definites="lower")
        upper_table[bits] = full & ~dc.value.bits
        native = classical_approximations(m, eq)
        if lower_table[bits] != native.lower.bits or upper_table[bits] != native.upper.bits:
            matches = False
            if not witness:
                witness = repr(m)
    return RecoveredApproximations(lower_table, upper_table, matches, witness)


# ---------------------------------------------------------------------------
# operator-space law suite


def gos_beta_suite(
    space: OperatorSpace, exhaustive_cap: int = 4, samples: int = 200, seed: int = 0
) -> SuiteReport:
    """The five dependence laws that survive in general operator spaces,
    plus witness searches for the three collapses that may fail there."""
    n = space.universe.size
    u = space.universe
    full = (1 << n) - 1

    def beta(x: int, y: int, mode: str = "infimal") -> DependenceDegree:
        return dependence_degree(u.mask(x), u.mask(y), space, mode)

    def beta_bits(x: int, y: int) -> int | None:
        d = beta(x, y)
        return d.value.bits if d.defined else None

    triples, mode_label = _triples(n, exhaustive_cap, samples, seed)
    pair_pool = sorted({(x, y) for x, y, _ in triples})
    results: list[LawResult] = []

    def law(name: str, fails: list[str], checked: int, note: str = "") -> None:
        results.append(
            LawResult(name, "pass" if not fails else "fail", checked,
                      tuple(fails[:3]), note=note)
        )

    w: list[str] = []
    for x, y in pair_pool:
        if beta_bits(x, y) != beta_bits(y, x):
            w.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}")
            break
    law("symmetry", w, len(pair_pool))

    w = []
    for x, y, z in triples:
        a, b = beta_bits(x, y), beta_bits(x, y | z)
        if a is None or b is None:
            w.append(f"undefined at x={u.mask(x)!r}, y={u.mask(y)!r}, z={u.mask(z)!r}")
            break
        if a & ~b:
            w.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}, z={u.mask(z)!r}")
            break
    law("union-monotone", w, len(triples))

    w = []
    for x, y in pair_pool:
        if x & ~y == 0 and beta_bits(x, y) != beta_bits(x, x):
            w.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}")
            break
    law("subset-collapse-to-self", w, len(pair_pool))

    w = []
    for x, y in pair_pool:
        if x & y == 0 and beta_bits(x, y) != 0:
            w.append(f"x={u.mask(x)!r}, y={u.mask(y)!r}")
            break
    law("disjoint-gives-empty", w, len(pair_pool))

    w = []
    for x, _ in pair_pool:
        if beta_bits(0, x) != 0 or beta_bits(x, full) != beta_bits(x, x):
            w.append(f"x={u.mask(x)!r}")
            break
    law("bottom-and-top", w, len(pair_pool))

    def search(name: str, pred, note: str) -> None:
        found: list[str] = []
        for x, y in pair_pool:
            msg = pred(x, y)
            if msg:
                found.append(msg)
                break
        results.append(
            LawResult(name, "witnesses-found" if found else "no-witness",
                      len(pair_pool), tuple(found), kind="search", note=note)
        )

    def self_not_lower(x: int, y: int) -> str:
        if x != y:
            return ""
        b = beta_bits(x, x)
        if b is None or b != space.lower_bits(x):
            return f"x={u.mask(x)!r}"
        return ""

    search("self-degree-differs-from-lower", self_not_lower,
           "collapse to the lower approximation can fail outside the classical case")

    def meet_mismatch(x: int, y: int) -> str:
        b = beta_bits(x, y)
        if b is None or b != space.lower_bits(x & y):
            return f"x={u.mask(x)!r}, y={u.mask(y)!r}"
        return ""

    search("degree-differs-from-meet-lower", meet_mismatch,
           "the degree need not equal the lower approximation of the meet")

    def sup_escape(x: int, y: int) -> str:
        d = beta(x, y, "supremal")
        if not d.defined:
            return f"undefined at x={u.mask(x)!r}, y={u.mask(y)!r}"
        if d.value.bits & ~(x | y):
            return f"x={u.mask(x)!r}, y={u.mask(y)!r}"
        return ""

    search("supremal-escapes-union", sup_escape,
           "the supremal degree can leave the union of its arguments")

    return SuiteReport(
        suite="operator-space-dependence",
        results=results,
        meta={"mode": mode_label, "space": space.name},
    )
