"""Finite implication algebras, their filters and spectrum, and the duality
with set families.

Set models use A.B = complement(A) union B with the full set as unit.  The
dual of a set family collects complement-plus-subset combinations of its
members; the spectrum of a finite algebra is computed from coatoms and
cross-checked against a maximal-filter scan, and the point and element maps
of the finite duality are verified by enumeration per instance.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .core import SubsetMask, Universe, submasks
from .errors import AlgebraError, BudgetError, NotDenseError
from .reports import LawResult, SuiteReport


def check_implication_axioms(
    n: int,
    imp: Callable[[int, int], int],
    unit: int,
    budget: int = 250_000,
    seed: int = 0,
    describe: Callable[[int], str] = str,
) -> SuiteReport:
    """The four implication-algebra axioms over an op table.

    The cubic distribution axiom is exhaustive when n^3 fits the budget and
    seeded-sampled otherwise; the report's meta records which."""
    results: list[LawResult] = []

    def law(name: str, fails: list[str], checked: int) -> None:
        results.append(LawResult(name, "pass" if not fails else "fail",
                                 checked, tuple(fails[:3])))

    w = [describe(a) for a in range(n) if imp(unit, a) != a]
    law("unit-left-identity", w, n)
    w = [describe(a) for a in range(n) if imp(a, a) != unit]
    law("self-implication-unit", w, n)

    exhaustive = n ** 3 <= budget
    w = []
    if exhaustive:
        triples = itertools.product(range(n), repeat=3)
        checked = n ** 3
    else:
        rng = random.Random(seed)
        triples = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            for _ in range(budget)
        )
        checked = budget
    for a, b, c in triples:
        if imp(a, imp(b, c)) != imp(imp(a, b), imp(a, c)):
            w = [f"a={describe(a)}, b={describe(b)}, c={describe(c)}"]
            break
    law("self-distribution", w, checked)

    w = []
    for a in range(n):
        for b in range(n):
            if imp(imp(a, b), b) != imp(imp(b, a), a):
                w.append(f"a={describe(a)}, b={describe(b)}")
                break
        if w:
            break
    law("exchange", w, n * n)
    return SuiteReport(
        suite="implication-axioms",
        results=results,
        meta={"mode": "exhaustive" if exhaustive else "sampled"},
    )


class FiniteTarskiAlgebra:
    """Finite carrier with a total implication table and unit.

    Axioms, the induced partial order with top, and the join formula are
    verified at construction (cubic parts under a budget, sampled beyond).
    Elements may be subset masks (set models) or opaque labels.
    """

    def __init__(
        self,
        elements: Sequence,
        table: Sequence[Sequence[int]],
        unit_index: int,
        check_budget: int = 250_000,
        seed: int = 0,
    ):
        self.elements = tuple(elements)
        self.table = tuple(tuple(row) for row in table)
        self.unit = unit_index
        n = len(self.elements)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise AlgebraError("implication table must be n by n")
        for row in self.table:
            for v in row:
                if not 0 <= v < n:
                    raise AlgebraError("table entry out of range")
        report = check_implication_axioms(
            n, lambda a, b: self.table[a][b], unit_index,
            budget=check_budget, seed=seed, describe=self._describe,
        )
        self.axiom_report = report
        bad = report.failures()
        if bad:
            first = bad[0]
            raise AlgebraError(
                f"axiom {first.name} fails: {first.witnesses[0] if first.witnesses else ''}"
            )
        self._check_order(check_budget, seed)

    def _describe(self, i: int) -> str:
        return repr(self.elements[i])

    @property
    def n(self) -> int:
        return len(self.elements)

    def imp(self, a: int, b: int) -> int:
        return self.table[a][b]

    def leq(self, a: int, b: int) -> bool:
        return self.table[a][b] == self.unit

    def join(self, a: int, b: int) -> int:
        return self.table[self.table[a][b]][b]

    def _check_order(self, budget: int, seed: int) -> None:
        n = self.n
        for a in range(n):
            if not self.leq(a, self.unit):
                raise AlgebraError(f"unit is not top above {self._describe(a)}")
            for b in range(n):
                if a != b and self.leq(a, b) and self.leq(b, a):
                    raise AlgebraError("induced order is not antisymmetric")
        # join must be the least upper bound
        if n ** 3 <= budget:
            pairs = itertools.product(range(n), repeat=2)
        else:
            rng = random.Random(seed)
            pairs = ((rng.randrange(n), rng.randrange(n))
                     for _ in range(budget // max(n, 1)))
        for a, b in pairs:
            j = self.join(a, b)
            if not (self.leq(a, j) and self.leq(b, j)):
                raise AlgebraError("join is not an upper bound")
            for c in range(n):
                if self.leq(a, c) and self.leq(b, c) and not self.leq(j, c):
                    raise AlgebraError("join is not least")

    @classmethod
    def of_sets(cls, masks: Iterable[SubsetMask], **kwargs) -> "FiniteTarskiAlgebra":
        """Set model on the given carrier; requires closure under the
        implication and presence of the full set."""
        masks = tuple(masks)
        elems = sorted({m.bits for m in masks})
        if not elems:
            raise AlgebraError("empty carrier")
        universe = masks[0].universe
        full = (1 << universe.size) - 1
        index = {bits: i for i, bits in enumerate(elems)}
        if full not in index:
            raise AlgebraError("set model must contain the full set as unit")
        table = []
        for a in elems:
            row = []
            for b in elems:
                v = (full & ~a) | b
                if v not in index:
                    raise AlgebraError(
                        f"carrier not closed: {universe.mask(a)!r}.{universe.mask(b)!r}"
                        f" = {universe.mask(v)!r} missing"
                    )
                row.append(index[v])
            table.append(row)
        return cls(
            tuple(universe.mask(b) for b in elems), table, index[full], **kwargs
        )

    @classmethod
    def from_labelled_table(
        cls, labels: Sequence[str], table: Sequence[Sequence[int]], unit_label: str,
        **kwargs,
    ) -> "FiniteTarskiAlgebra":
        return cls(tuple(labels), table, list(labels).index(unit_label), **kwargs)

    def masks(self) -> tuple[SubsetMask, ...]:
        if not all(isinstance(e, SubsetMask) for e in self.elements):
            raise AlgebraError("not a set model")
        return self.elements  # type: ignore[return-value]


def full_power_algebra(universe: Universe) -> FiniteTarskiAlgebra:
    return FiniteTarskiAlgebra.of_sets(tuple(universe.all_masks()))


# ---------------------------------------------------------------------------
# poset groupoids


def poset_groupoid_table(n: int, leq: Callable[[int, int], bool]) -> list[list[int]]:
    """a.b = a when a is below b, else b."""
    return [[a if leq(a, b) else b for b in range(n)] for a in range(n)]


def check_groupoid_axioms(
    n: int, op: Callable[[int, int], int], describe: Callable[[int], str] = str
) -> SuiteReport:
    """The five defining equations of poset groupoids, left-bound."""
    results: list[LawResult] = []

    def law(name: str, fails: list[str], checked: int) -> None:
        results.append(LawResult(name, "pass" if not fails else "fail",
                                 checked, tuple(fails[:3])))

    w = [describe(a) for a in range(n) if op(a, a) != a]
    law("idempotence", w, n)
    w = []
    for a, b in itertools.product(range(n), repeat=2):
        if op(op(a, b), a) != op(b, a):
            w.append(f"a={describe(a)}, b={describe(b)}")
            break
    law("wrap-absorption", w, n * n)
    w = []
    for a, b in itertools.product(range(n), repeat=2):
        if op(op(a, b), b) != op(a, b):
            w.append(f"a={describe(a)}, b={describe(b)}")
            break
    law("right-absorption", w, n * n)
    w = []
    for a, b, c in itertools.product(range(n), repeat=3):
        if op(a, op(op(a, b), c)) != op(a, op(b, c)):
            w.append(f"a={describe(a)}, b={describe(b)}, c={describe(c)}")
            break
    law("left-contraction", w, n ** 3)
    w = []
    for a, b, c in itertools.product(range(n), repeat=3):
        if op(op(op(a, b), c), b) != op(op(a, c), b):
            w.append(f"a={describe(a)}, b={describe(b)}, c={describe(c)}")
            break
    law("middle-swap", w, n ** 3)
    return SuiteReport(suite="poset-groupoid-axioms", results=results, meta={})


def check_shared_equations(
    n: int, op: Callable[[int, int], int], describe: Callable[[int], str] = str
) -> SuiteReport:
    """The three equations satisfied by both implication algebras and poset
    groupoids."""
    results: list[LawResult] = []

    def law(name: str, fails: list[str], checked: int) -> None:
        results.append(LawResult(name, "pass" if not fails else "fail",
                                 checked, tuple(fails[:3])))

    w = [describe(a) for a in range(n) if op(op(a, a), a) != a]
    law("triple-contraction", w, n)
    w = []
    for a, b, c in itertools.product(range(n), repeat=3):
        if op(a, op(op(a, b), c)) != op(a, op(b, c)):
            w.append(f"a={describe(a)}, b={describe(b)}, c={describe(c)}")
            break
    law("left-contraction", w, n ** 3)
    w = []
    for a, b in itertools.product(range(n), repeat=2):
        if op(a, op(a, b)) != op(a, b):
            w.append(f"a={describe(a)}, b={describe(b)}")
            break
    law("repeat-collapse", w, n * n)
    return SuiteReport(suite="shared-equations", results=results, meta={})


# ---------------------------------------------------------------------------
# set families and their duals


@dataclass(frozen=True)
class TarskiSet:
    """A universe with a nonempty family of subsets; dense when the family
    covers the universe."""

    universe: Universe
    family: tuple[SubsetMask, ...]

    def __post_init__(self):
        if not self.family:
            raise AlgebraError("family must be nonempty")
        for m in self.family:
            if m.universe != self.universe:
                raise AlgebraError("family member universe differs")
        object.__setattr__(
            self,
            "family",
            tuple(self.universe.mask(b) for b in sorted({m.bits for m in self.family})),
        )

    @cached_property
    def is_dense(self) -> bool:
        bits = 0
        for m in self.family:
            bits |= m.bits
        return bits == (1 << self.universe.size) - 1

    def uncovered_label(self) -> str:
        bits = 0
        for m in self.family:
            bits |= m.bits
        for i in range(self.universe.size):
            if not bits >> i & 1:
                return self.universe.labels[i]
        raise AlgebraError("family is dense")


def dual_set_algebra(ts: TarskiSet, **kwargs) -> FiniteTarskiAlgebra:
    """All complement-plus-subset combinations of family members, as a set
    implication algebra.  Closure under the operation is verified."""
    full = (1 << ts.universe.size) - 1
    out: set[int] = set()
    for w in ts.family:
        comp = full & ~w.bits
        for h in submasks(w.bits):
            out.add(comp | h)
    return FiniteTarskiAlgebra.of_sets(
        tuple(ts.universe.mask(b) for b in sorted(out)), **kwargs
    )


# ---------------------------------------------------------------------------
# filters and the spectrum


def enumerate_filters(
    algebra: FiniteTarskiAlgebra, budget: int = 200_000
) -> tuple[frozenset[int], ...]:
    """All filters: up-sets containing the unit and closed under detachment.

    Up-sets are generated by a pruned recursion over a linear extension from
    the top; the recursion aborts with a budget error if the poset has too
    many up-sets to enumerate."""
    n = algebra.n
    above = [
        frozenset(j for j in range(n) if j != i and algebra.leq(i, j))
        for i in range(n)
    ]
    order = sorted(range(n), key=lambda i: (len(above[i]), i))
    results: list[frozenset[int]] = []
    nodes = 0

    def rec(k: int, included: set[int]) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetError(f"up-set enumeration exceeded budget {budget}")
        if k == n:
            results.append(frozenset(included))
            return
        i = order[k]
        rec(k + 1, included)
        if above[i] <= included:
            included.add(i)
            rec(k + 1, included)
            included.discard(i)

    rec(0, set())
    filters = []
    for ups in results:
        if algebra.unit not in ups:
            continue
        ok = True
        for a in ups:
            row = algebra.table[a]
            for b in range(n):
                if row[b] in ups and b not in ups:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            filters.append(ups)
    return tuple(sorted(filters, key=lambda f: (len(f), sorted(f))))


def coatoms(algebra: FiniteTarskiAlgebra) -> tuple[int, ...]:
    """Maximal elements strictly below the unit."""
    out = []
    for a in range(algebra.n):
        if a == algebra.unit:
            continue
        if all(
            b == a or b == algebra.unit or not algebra.leq(a, b)
            for b in range(algebra.n)
        ):
            out.append(a)
    return tuple(out)


def is_prime_filter(algebra: FiniteTarskiAlgebra, k: frozenset[int]) -> bool:
    for a in range(algebra.n):
        for b in range(algebra.n):
            if algebra.join(a, b) in k and a not in k and b not in k:
                return False
    return True


@dataclass(frozen=True)
class SpectrumResult:
    filters: tuple[frozenset[int], ...]
    coatoms: tuple[int, ...]
    scan_agrees: bool
    all_prime: bool


def spectrum(
    algebra: FiniteTarskiAlgebra, scan_budget: int = 200_000
) -> SpectrumResult:
    """Maximal proper filters, from the coatom formula, cross-checked
    against a maximal-filter scan when the filter lattice fits the budget."""
    cats = coatoms(algebra)
    via_coatoms = tuple(
        frozenset(x for x in range(algebra.n) if not algebra.leq(x, c))
        for c in cats
    )
    scan_agrees = True
    try:
        all_filters = enumerate_filters(algebra, budget=scan_budget)
        proper = [f for f in all_filters if len(f) < algebra.n]
        maximal = [
            f for f in proper
            if not any(f < g for g in proper)
        ]
        scan_agrees = set(via_coatoms) == set(maximal)
    except BudgetError:
        scan_agrees = True  # cross-check skipped; coatom path stands alone
    ordered = tuple(sorted(via_coatoms, key=lambda f: sorted(f)))
    all_prime = all(is_prime_filter(algebra, f) for f in ordered)
    return SpectrumResult(
        filters=ordered, coatoms=cats, scan_agrees=scan_agrees, all_prime=all_prime
    )


# ---------------------------------------------------------------------------
# the two duality maps


@dataclass(frozen=True)
class SpecEmbedding:
    spec_universe: Universe
    images: tuple[SubsetMask, ...]  # one per algebra element
    associated: TarskiSet
    injective: bool
    preserves_op: bool
    image_equals_dual: bool


def spec_embedding(algebra: FiniteTarskiAlgebra) -> SpecEmbedding:
    """Element map into the power set of the spectrum, with the associated
    set and the image-versus-dual comparison."""
    spec = spectrum(algebra)
    if not spec.filters:
        raise AlgebraError("trivial algebra has an empty spectrum")
    m = len(spec.filters)
    spec_universe = Universe(tuple(f"K{i}" for i in range(m)))
    images = []
    for x in range(algebra.n):
        bits = 0
        for j, filt in enumerate(spec.filters):
            if x in filt:
                bits |= 1 << j
        images.append(spec_universe.mask(bits))
    injective = len({im.bits for im in images}) == algebra.n
    preserves = True
    for a in range(algebra.n):
        for b in range(algebra.n):
            expected = images[a].complement() | images[b]
            if images[algebra.table[a][b]] != expected:
                preserves = False
                break
        if not preserves:
            break
    associated = TarskiSet(
        spec_universe, tuple(im.complement() for im in images)
    )
    dual = dual_set_algebra(associated)
    image_equals_dual = {im.bits for im in images} == {
        e.bits for e in dual.masks()
    }
    return SpecEmbedding(
        spec_universe=spec_universe,
        images=tuple(images),
        associated=associated,
        injective=injective,
        preserves_op=preserves,
        image_equals_dual=image_equals_dual,
    )


@dataclass(frozen=True)
class PointSpecResult:
    images: tuple[frozenset[int], ...]  # filter per point, as dual indices
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


def point_spec_bijection(ts: TarskiSet) -> PointSpecResult:
    """Send each point to the dual elements containing it; verify this lands
    bijectively on the spectrum of the dual algebra.  Dense input required."""
    if not ts.is_dense:
        raise NotDenseError(ts.uncovered_label())
    dual = dual_set_algebra(ts)
    spec = set(spectrum(dual).filters)
    images = []
    for x in range(ts.universe.size):
        filt = frozenset(
            i for i, e in enumerate(dual.masks()) if x in e
        )
        images.append(filt)
    injective = len(set(images)) == ts.universe.size
    surjective = set(images) == spec
    return PointSpecResult(
        images=tuple(images), injective=injective, surjective=surjective
    )


@dataclass(frozen=True)
class RoundTripReport:
    dual_axioms_ok: bool
    point_map_bijective: bool
    embedding_image_equals_dual: bool

    @property
    def ok(self) -> bool:
        return (
            self.dual_axioms_ok
            and self.point_map_bijective
            and self.embedding_image_equals_dual
        )


def duality_roundtrip(ts: TarskiSet) -> RoundTripReport:
    dual = dual_set_algebra(ts)  # construction verifies axioms
    pts = point_spec_bijection(ts)
    emb = spec_embedding(dual) if dual.n > 1 else None
    return RoundTripReport(
        dual_axioms_ok=dual.axiom_report.passed(),
        point_map_bijective=pts.bijective,
        embedding_image_equals_dual=emb.image_equals_dual if emb else True,
    )


# ---------------------------------------------------------------------------
# field models and the countable-prefix law


def field_implication_algebra(
    masks: Iterable[SubsetMask], **kwargs
) -> FiniteTarskiAlgebra:
    """Set algebra over a field of sets; the family must be closed under
    union, intersection and complement."""
    masks = tuple(masks)
    bits = sorted({m.bits for m in masks})
    if not bits:
        raise AlgebraError("empty field")
    universe = masks[0].universe
    full = (1 << universe.size) - 1
    present = set(bits)
    for a in bits:
        if (full & ~a) not in present:
            raise AlgebraError(f"field not complement-closed at {universe.mask(a)!r}")
        for b in bits:
            if (a | b) not in present or (a & b) not in present:
                raise AlgebraError(
                    f"field not lattice-closed at {universe.mask(a)!r}, {universe.mask(b)!r}"
                )
    return FiniteTarskiAlgebra.of_sets(
        tuple(universe.mask(b) for b in bits), **kwargs
    )


def sequence_distribution_check(
    algebra: FiniteTarskiAlgebra,
    max_len: int,
    seq: Sequence[int] | None = None,
    budget: int = 200_000,
    seed: int = 0,
) -> LawResult:
    """Finite-prefix form of the countably-extended distribution law.

    For each length up to max_len, folding the sequence from the right must
    distribute over the head pair.  A given sequence is checked prefixwise;
    otherwise all sequences are enumerated within budget, sampled beyond."""
    n = algebra.n

    def fold(items: Sequence[int]) -> int:
        acc = items[-1]
        for a in reversed(items[:-1]):
            acc = algebra.table[a][acc]
        return acc

    def holds(items: Sequence[int]) -> bool:
        a1, a2 = items[0], items[1]
        tail = items[2:]
        lhs = fold(items)
        rhs_tail = algebra.table[a1][fold(tail)] if tail else None
        if rhs_tail is None:
            return True
        rhs = algebra.table[algebra.table[a1][a2]][rhs_tail]
        return lhs == rhs

    witnesses: list[str] = []
    checked = 0
    if seq is not None:
        for L in range(3, min(max_len, len(seq)) + 1):
            checked += 1
            if not holds(seq[:L]):
                witnesses.append(f"prefix of length {L}")
                break
    else:
        rng = random.Random(seed)
        for L in range(3, max_len + 1):
            total = n ** L
            if total <= budget:
                pool = itertools.product(range(n), repeat=L)
            else:
                pool = (
                    tuple(rng.randrange(n) for _ in range(L))
                    for _ in range(budget)
                )
            for items in pool:
                checked += 1
                if not holds(items):
                    witnesses.append(
                        f"sequence {[algebra.elements[i] for i in items]!r}"
                    )
                    break
            if witnesses:
                break
    return LawResult(
        name="prefix-distribution",
        verdict="pass" if not witnesses else "fail",
        checked=checked,
        witnesses=tuple(witnesses),
    )


# ---------------------------------------------------------------------------
# semi-morphisms


def is_semi_morphism(
    src: FiniteTarskiAlgebra, dst: FiniteTarskiAlgebra, mapping: Sequence[int]
) -> tuple[bool, str]:
    """Unit preserving, monotone, and submultiplicative on implications."""
    if mapping[src.unit] != dst.unit:
        return False, "unit not preserved"
    for a in range(src.n):
        for b in range(src.n):
            if src.leq(a, b) and not dst.leq(mapping[a], mapping[b]):
                return False, f"monotonicity fails at ({src._describe(a)}, {src._describe(b)})"
            if not dst.leq(
                mapping[src.table[a][b]], dst.table[mapping[a]][mapping[b]]
            ):
                return False, f"implication bound fails at ({src._describe(a)}, {src._describe(b)})"
    return True, ""


def is_homomorphism(
    src: FiniteTarskiAlgebra, dst: FiniteTarskiAlgebra, mapping: Sequence[int]
) -> bool:
    return all(
        mapping[src.table[a][b]] == dst.table[mapping[a]][mapping[b]]
        for a in range(src.n)
        for b in range(src.n)
    )


def semi_morphisms(
    src: FiniteTarskiAlgebra,
    dst: FiniteTarskiAlgebra,
    budget: int = 10_000_000,
    injective_only: bool = False,
) -> tuple[tuple[int, ...], ...]:
    """All semi-morphisms by pruned assignment, in lexicographic order.

    The search tree is capped by the budget; exceeding it raises rather than
    silently truncating."""
    n, m = src.n, dst.n
    order = [src.unit] + [i for i in range(n) if i != src.unit]
    results: list[tuple[int, ...]] = []
    mapping = [-1] * n
    nodes = 0

    def consistent(e: int) -> bool:
        for a in range(n):
            if mapping[a] < 0:
                continue
            for x, y in ((e, a), (a, e), (e, e)):
                if mapping[x] < 0 or mapping[y] < 0:
                    continue
                if src.leq(x, y) and not dst.leq(mapping[x], mapping[y]):
                    return False
                t = src.table[x][y]
                if mapping[t] >= 0 and not dst.leq(
                    mapping[t], dst.table[mapping[x]][mapping[y]]
                ):
                    return False
        return True

    def rec(k: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetError(f"semi-morphism search exceeded budget {budget}")
        if k == n:
            results.append(tuple(mapping))
            return
        e = order[k]
        choices = [dst.unit] if e == src.unit else range(m)
        used = {mapping[order[j]] for j in range(k)}
        for img in choices:
            if injective_only and img in used:
                continue
            mapping[e] = img
            if consistent(e):
                rec(k + 1)
            mapping[e] = -1

    rec(0)
    verified = []
    for cand in results:
        ok, _ = is_semi_morphism(src, dst, cand)
        if ok and (not injective_only or len(set(cand)) == n):
            verified.append(cand)
    return tuple(sorted(verified))


@dataclass(frozen=True)
class BoxMapResult:
    source: FiniteTarskiAlgebra  # full power algebra of the relation codomain
    target: FiniteTarskiAlgebra  # full power algebra of the relation domain
    mapping: tuple[int, ...]
    certified: bool
    witness: str


def relation_box_map(
    pairs: Iterable[tuple[int, int]],
    dom_universe: Universe,
    cod_universe: Universe,
) -> BoxMapResult:
    """The box map of a relation between two universes.

    For a relation from dom to cod, a codomain subset U is sent to the
    domain points whose successor set sits inside U; the result is a
    certified semi-morphism between the full power algebras."""
    succ = [0] * dom_universe.size
    for x, w in pairs:
        succ[x] |= 1 << w
    src = full_power_algebra(cod_universe)
    dst = full_power_algebra(dom_universe)
    index_dst = {e.bits: i for i, e in enumerate(dst.masks())}
    mapping = []
    for e in src.masks():
        bits = 0
        for x in range(dom_universe.size):
            if succ[x] & ~e.bits == 0:
                bits |= 1 << x
        mapping.append(index_dst[bits])
    ok, witness = is_semi_morphism(src, dst, mapping)
    return BoxMapResult(
        source=src, target=dst, mapping=tuple(mapping), certified=ok, witness=witness
    )
