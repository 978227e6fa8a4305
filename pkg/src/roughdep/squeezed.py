"""Tolerance spaces, squeezed blocks, and the definable-object lattice.

Blocks are maximal cliques of the tolerance; squeezed blocks are their
nonempty intersections; definable objects are unions of squeezed blocks and
form a finite Alexandrov topology carrying a double Heyting structure.  The
displayed member-intersection form of the co-implication is kept as a
diagnostic because it breaks dual residuation; the operative co-implication
is the least definable superset of the set difference.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .core import BinaryRelation, SubsetMask, Universe, submasks
from .errors import DefinabilityError, RelationError
from .reports import LawResult, SuiteReport
from .tarski import FiniteTarskiAlgebra

APPROX_KINDS = ("lower", "upper", "bitten-upper")


@dataclass(frozen=True)
class ToleranceSpace:
    """Reflexive symmetric relation, stored as undirected non-loop pairs."""

    universe: Universe
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        n = self.universe.size
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n):
                raise RelationError(f"edge ({a},{b}) out of range")
        object.__setattr__(
            self,
            "edges",
            frozenset(
                (min(a, b), max(a, b)) for a, b in self.edges if a != b
            ),
        )

    @classmethod
    def of_pairs(
        cls, universe: Universe, pairs: Iterable[tuple[str, str]]
    ) -> "ToleranceSpace":
        return cls(
            universe,
            frozenset(
                (universe.index(a), universe.index(b)) for a, b in pairs
            ),
        )

    @classmethod
    def from_relation(cls, rel: BinaryRelation) -> "ToleranceSpace":
        if not (rel.is_reflexive and rel.is_symmetric):
            raise RelationError("tolerance requires a reflexive symmetric relation")
        return cls(rel.universe, frozenset(rel.pairs))

    def related(self, a: int, b: int) -> bool:
        return a == b or (min(a, b), max(a, b)) in self.edges

    def neighbors_bits(self, a: int) -> int:
        bits = 1 << a
        for x, y in self.edges:
            if x == a:
                bits |= 1 << y
            elif y == a:
                bits |= 1 << x
        return bits

    def to_relation(self) -> BinaryRelation:
        pairs = {(i, i) for i in range(self.universe.size)}
        for a, b in self.edges:
            pairs.add((a, b))
            pairs.add((b, a))
        return BinaryRelation(self.universe, frozenset(pairs))


def _maximal_cliques(tol: ToleranceSpace) -> list[int]:
    """Bron-Kerbosch with pivot, on bitmask vertex sets."""
    n = tol.universe.size
    adj = [tol.neighbors_bits(i) & ~(1 << i) for i in range(n)]
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best = pivot
        best_count = (p & adj[pivot]).bit_count()
        rest = pivot_pool
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            c = (p & adj[v]).bit_count()
            if c > best_count:
                best, best_count = v, c
        candidates = p & ~adj[best]
        while candidates:
            v = (candidates & -candidates).bit_length() - 1
            candidates &= candidates - 1
            expand(r | (1 << v), p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, (1 << n) - 1, 0)
    return sorted(out)


@dataclass(frozen=True)
class SqueezedSystem:
    """Blocks, squeezed blocks, definable objects and point atoms of one
    tolerance space."""

    tolerance: ToleranceSpace
    blocks: tuple[SubsetMask, ...]
    squeezed: tuple[SubsetMask, ...]
    definables: tuple[SubsetMask, ...]
    atoms: tuple[SubsetMask, ...]  # least squeezed block per element

    @property
    def universe(self) -> Universe:
        return self.tolerance.universe

    def is_definable(self, x: SubsetMask) -> bool:
        return x.bits in {d.bits for d in self.definables}


def build_squeezed(tol: ToleranceSpace) -> SqueezedSystem:
    """Blocks by maximal-clique enumeration; squeezed blocks as the closure
    of the blocks under nonempty pairwise intersection; definables as the
    union closure.  Atomisticity of the definables is verified."""
    u = tol.universe
    blocks = _maximal_cliques(tol)
    squeezed = set(blocks)
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(sorted(squeezed), 2):
            inter = a & b
            if inter and inter not in squeezed:
                squeezed.add(inter)
                changed = True
    definables = {0}
    frontier = sorted(squeezed)
    for t in frontier:
        definables |= {d | t for d in definables}
    atoms = []
    for x in range(u.size):
        bits = (1 << u.size) - 1
        for t in squeezed:
            if t >> x & 1:
                bits &= t
        atoms.append(bits)
    system = SqueezedSystem(
        tolerance=tol,
        blocks=tuple(u.mask(b) for b in blocks),
        squeezed=tuple(u.mask(b) for b in sorted(squeezed)),
        definables=tuple(u.mask(b) for b in sorted(definables)),
        atoms=tuple(u.mask(b) for b in atoms),
    )
    for d in system.definables:
        fold = 0
        for x in d:
            fold |= system.atoms[x].bits
        if fold != d.bits:
            raise RelationError(f"definable {d!r} is not a union of its atoms")
    return system


# ---------------------------------------------------------------------------
# approximations


def squeezed_lower(x: SubsetMask, system: SqueezedSystem) -> SubsetMask:
    bits = 0
    for t in system.squeezed:
        if t.bits & ~x.bits == 0:
            bits |= t.bits
    return system.universe.mask(bits)


def squeezed_upper(x: SubsetMask, system: SqueezedSystem) -> SubsetMask:
    bits = 0
    for t in system.squeezed:
        if t.bits & x.bits:
            bits |= t.bits
    return system.universe.mask(bits)


def bitten_upper(x: SubsetMask, system: SqueezedSystem) -> SubsetMask:
    """Upper approximation with the lower approximation of the complement
    bitten off."""
    up = squeezed_upper(x, system)
    bite = squeezed_lower(x.complement(), system)
    return up - bite


def squeezed_approx(x: SubsetMask, system: SqueezedSystem, kind: str) -> SubsetMask:
    if kind == "lower":
        return squeezed_lower(x, system)
    if kind == "upper":
        return squeezed_upper(x, system)
    if kind == "bitten-upper":
        return bitten_upper(x, system)
    raise RelationError(f"unknown approximation kind {kind!r}")


def modal_law_suite(system: SqueezedSystem, exhaustive_cap: int = 8) -> SuiteReport:
    """The eight modal laws of the squeezed approximations, exhaustively."""
    u = system.universe
    n = u.size
    if n > exhaustive_cap:
        raise RelationError("modal suite limited to small universes")
    full = (1 << n) - 1
    lower = [0] * (1 << n)
    upper_t = [0] * (1 << n)
    tbits = [t.bits for t in system.squeezed]
    for bits in range(1 << n):
        lo = 0
        up = 0
        for t in tbits:
            if t & ~bits == 0:
                lo |= t
            if t & bits:
                up |= t
        lower[bits] = lo
        upper_t[bits] = up

    def bit_upper(bits: int) -> int:
        return upper_t[bits] & ~lower[full & ~bits]

    results: list[LawResult] = []

    def law(name: str, fails: list[str], checked: int) -> None:
        results.append(LawResult(name, "pass" if not fails else "fail",
                                 checked, tuple(fails[:3])))

    w = [
        repr(u.mask(a))
        for a in range(1 << n)
        if bit_upper(a) != full & ~lower[full & ~a]
    ]
    law("bitten-upper-dual", w, 1 << n)

    w = []
    for a in range(1 << n):
        for b in range(1 << n):
            if a & ~b == 0 and lower[a] & ~lower[b]:
                w.append(f"a={u.mask(a)!r}, b={u.mask(b)!r}")
                break
        if w:
            break
    law("lower-monotone", w, 1 << (2 * n))

    w = []
    if lower[0] != 0 or bit_upper(0) != 0:
        w.append("bottom moved")
    law("bottom", w, 1)
    w = []
    if lower[full] != full or bit_upper(full) != full:
        w.append("top moved")
    law("top", w, 1)

    w = [
        repr(u.mask(a))
        for a in range(1 << n)
        if lower[a] & ~a or a & ~bit_upper(a)
    ]
    law("reflexive-sandwich", w, 1 << n)

    w = [repr(u.mask(a)) for a in range(1 << n) if lower[lower[a]] != lower[a]]
    law("lower-idempotent", w, 1 << n)

    w = []
    for a in range(1 << n):
        for b in range(1 << n):
            if lower[a & b] & ~(lower[a] & lower[b]):
                w.append(f"a={u.mask(a)!r}, b={u.mask(b)!r}")
                break
        if w:
            break
    law("meet-subdistributive", w, 1 << (2 * n))

    w = []
    for a in range(1 << n):
        for b in range(1 << n):
            if (lower[a] | lower[b]) & ~lower[a | b]:
                w.append(f"a={u.mask(a)!r}, b={u.mask(b)!r}")
                break
        if w:
            break
    law("join-superdistributive", w, 1 << (2 * n))

    return SuiteReport(
        suite="squeezed-modal-laws",
        results=results,
        meta={"universe": str(n), "blocks": str(len(system.blocks))},
    )


# ---------------------------------------------------------------------------
# double Heyting structure on the definables


def implication_to(x: SubsetMask, z: SubsetMask, system: SqueezedSystem) -> SubsetMask:
    """Union of the squeezed blocks whose meet with x stays inside z; the
    greatest definable with that property."""
    if not (system.is_definable(x) and system.is_definable(z)):
        raise DefinabilityError("arguments must be definable objects")
    bits = 0
    for t in system.squeezed:
        if x.bits & t.bits & ~z.bits == 0:
            bits |= t.bits
    return system.universe.mask(bits)


def subtraction(x: SubsetMask, z: SubsetMask, system: SqueezedSystem) -> SubsetMask:
    """Least definable superset of x minus z: the union of the atoms of the
    difference.  This is the co-implication that satisfies dual residuation."""
    if not (system.is_definable(x) and system.is_definable(z)):
        raise DefinabilityError("arguments must be definable objects")
    bits = 0
    for y in x - z:
        bits |= system.atoms[y].bits
    return system.universe.mask(bits)


def subtraction_member_form(
    x: SubsetMask, z: SubsetMask, system: SqueezedSystem
) -> tuple[SubsetMask, bool]:
    """Displayed form: intersect the squeezed blocks that cover x beyond z.

    Returns the full set with a flag when no single block qualifies.  Kept
    as a diagnostic; this form can disagree with the residuation-correct
    subtraction."""
    if not (system.is_definable(x) and system.is_definable(z)):
        raise DefinabilityError("arguments must be definable objects")
    qualifying = [
        t for t in system.squeezed if x.bits & ~(z.bits | t.bits) == 0
    ]
    if not qualifying:
        return system.universe.full(), True
    bits = (1 << system.universe.size) - 1
    for t in qualifying:
        bits &= t.bits
    return system.universe.mask(bits), False


def heyting_suite(system: SqueezedSystem, triple_budget: int = 2_000_000) -> SuiteReport:
    """Residuation, dual residuation, distributivity, atomisticity, and the
    witness searches for regularity and weak-excluded-middle failures.

    Small definable lattices get the literal triple scan; larger ones get an
    equivalent member-reduced check (exact, not sampled), and the report
    names which ran."""
    u = system.universe
    defs = [d.bits for d in system.definables]
    dset = set(defs)
    full = (1 << u.size) - 1
    atom_bits = [a.bits for a in system.atoms]
    tbits = [t.bits for t in system.squeezed]

    def arrow(x: int, z: int) -> int:
        bits = 0
        for t in tbits:
            if x & t & ~z == 0:
                bits |= t
        return bits

    def minus(x: int, z: int) -> int:
        bits = 0
        rest = x & ~z
        while rest:
            y = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            bits |= atom_bits[y]
        return bits

    results: list[LawResult] = []
    literal = len(defs) ** 3 <= triple_budget
    mode = "exhaustive-triples" if literal else "member-reduced"

    res_w: list[str] = []
    dual_w: list[str] = []
    closure_w: list[str] = []
    for x in defs:
        for z in defs:
            a = arrow(x, z)
            m = minus(x, z)
            if a not in dset or m not in dset:
                closure_w.append(f"x={u.mask(x)!r}, z={u.mask(z)!r}")
                continue
            if x & a & ~z:
                res_w.append(f"arrow not qualifying at x={u.mask(x)!r}, z={u.mask(z)!r}")
            if x & ~(m | z):
                dual_w.append(f"difference not covered at x={u.mask(x)!r}, z={u.mask(z)!r}")
            if literal:
                for p in defs:
                    if (x & p & ~z == 0) != (p & ~a == 0):
                        res_w.append(
                            f"x={u.mask(x)!r}, z={u.mask(z)!r}, p={u.mask(p)!r}"
                        )
                        break
                for q in defs:
                    if (x & ~(q | z) == 0) != (m & ~q == 0):
                        dual_w.append(
                            f"x={u.mask(x)!r}, z={u.mask(z)!r}, q={u.mask(q)!r}"
                        )
                        break
            else:
                # a definable qualifies iff each of its blocks does, and the
                # arrow is the union of qualifying blocks, so it suffices to
                # check blockwise containment
                for t in tbits:
                    if x & t & ~z == 0 and t & ~a:
                        res_w.append(
                            f"x={u.mask(x)!r}, z={u.mask(z)!r}, block={u.mask(t)!r}"
                        )
                        break
                # every definable cover of x minus z contains its atoms
                rest = x & ~z
                while rest:
                    y = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    if atom_bits[y] & ~m:
                        dual_w.append(
                            f"x={u.mask(x)!r}, z={u.mask(z)!r}, point={u.labels[y]}"
                        )
                        break
            if res_w and dual_w and closure_w:
                break
        if res_w and dual_w and closure_w:
            break

    results.append(LawResult("operations-stay-definable",
                             "pass" if not closure_w else "fail",
                             len(defs) ** 2, tuple(closure_w[:3])))
    results.append(LawResult("residuation", "pass" if not res_w else "fail",
                             len(defs) ** 2, tuple(res_w[:3])))
    results.append(LawResult("dual-residuation", "pass" if not dual_w else "fail",
                             len(defs) ** 2, tuple(dual_w[:3])))

    w = []
    limit = min(len(defs), 40)
    for x, y, z in itertools.product(defs[:limit], repeat=3):
        if x & (y | z) != (x & y) | (x & z) or x | (y & z) != (x | y) & (x | z):
            w.append("distributivity broke")
            break
    results.append(LawResult("distributive", "pass" if not w else "fail",
                             limit ** 3, tuple(w)))

    w = []
    for d in defs:
        if d == 0:
            continue
        if not any(atom_bits[y] & ~d == 0 for y in u.mask(d)):
            w.append(repr(u.mask(d)))
            break
    results.append(LawResult("atomic", "pass" if not w else "fail",
                             len(defs), tuple(w)))

    w = []
    for d in defs:
        fold = 0
        for y in u.mask(d):
            fold |= atom_bits[y]
        if fold != d:
            w.append(repr(u.mask(d)))
            break
    results.append(LawResult("atomistic", "pass" if not w else "fail",
                             len(defs), tuple(w)))

    reg = []
    wlem = []
    for x in defs:
        nx = arrow(x, 0)
        nnx = arrow(nx, 0)
        if nnx != x:
            reg.append(f"x={u.mask(x)!r}, double negation {u.mask(nnx)!r}")
        if nx | arrow(nx, 0) != full:
            wlem.append(f"x={u.mask(x)!r}")
    results.append(
        LawResult("regularity-failure", "witnesses-found" if reg else "no-witness",
                  len(defs), tuple(reg[:3]), kind="search",
                  note="double negation moves some definable"))
    results.append(
        LawResult("weak-excluded-middle-failure",
                  "witnesses-found" if wlem else "no-witness",
                  len(defs), tuple(wlem[:3]), kind="search"))

    diverge = []
    for x in defs:
        for z in defs:
            member_form, empty_family = subtraction_member_form(
                u.mask(x), u.mask(z), system
            )
            if member_form.bits != minus(x, z):
                tag = " (no qualifying block)" if empty_family else ""
                diverge.append(f"x={u.mask(x)!r}, z={u.mask(z)!r}{tag}")
                break
        if diverge:
            break
    results.append(
        LawResult(
            name="member-form-divergence",
            verdict="witnesses-found" if diverge else "no-witness",
            checked=len(defs) ** 2,
            witnesses=tuple(diverge[:3]),
            kind="diagnostic",
            note="the block-intersection display of subtraction disagrees "
                 "with the residuation-correct form on these arguments",
        )
    )
    return SuiteReport(
        suite="double-heyting",
        results=results,
        meta={"definables": str(len(defs)), "mode": mode},
    )


# ---------------------------------------------------------------------------
# the induced implication algebra


@dataclass(frozen=True)
class PresqueezedReport:
    algebra: FiniteTarskiAlgebra
    approx_well_defined: dict[str, bool]
    approx_witnesses: dict[str, str]
    boolean_definable: bool
    boolean_witness: str
    squeezed_closure_witness: str
    definable_closure_witness: str


def presqueezed_algebra(
    system: SqueezedSystem, check_budget: int = 250_000, seed: int = 0
) -> PresqueezedReport:
    """Carrier of complement-inside-a-block sets with the set implication.

    A set belongs iff its complement sits inside some squeezed block, which
    makes closure under the implication structural; the axioms are still
    checked per instance.  Whether the three approximations keep their
    values inside the carrier is checked, not assumed, as is complement
    closure (the Boolean test) and the closure failures of the squeezed
    blocks and definables under the implication."""
    u = system.universe
    full = (1 << u.size) - 1
    tbits = [t.bits for t in system.squeezed]
    carrier = [
        bits
        for bits in range(1 << u.size)
        if any((full & ~bits) & ~t == 0 for t in tbits)
    ]
    algebra = FiniteTarskiAlgebra.of_sets(
        tuple(u.mask(b) for b in carrier), check_budget=check_budget, seed=seed
    )
    carrier_set = set(carrier)

    well: dict[str, bool] = {}
    wit: dict[str, str] = {}
    for kind in APPROX_KINDS:
        ok = True
        witness = ""
        for bits in carrier:
            img = squeezed_approx(u.mask(bits), system, kind).bits
            if img not in carrier_set:
                ok = False
                witness = f"{kind} of {u.mask(bits)!r} = {u.mask(img)!r} escapes"
                break
        well[kind] = ok
        wit[kind] = witness

    boolean = True
    bool_wit = ""
    for bits in carrier:
        if (full & ~bits) not in carrier_set:
            boolean = False
            bool_wit = f"complement of {u.mask(bits)!r} escapes"
            break

    sq_wit = ""
    tset = set(tbits)
    for a in tbits:
        for b in tbits:
            v = (full & ~a) | b
            if v not in tset:
                sq_wit = f"{u.mask(a)!r}.{u.mask(b)!r} = {u.mask(v)!r} escapes"
                break
        if sq_wit:
            break
    def_wit = ""
    dbits = [d.bits for d in system.definables]
    dset = set(dbits)
    for a in dbits:
        for b in dbits:
            v = (full & ~a) | b
            if v not in dset:
                def_wit = f"{u.mask(a)!r}.{u.mask(b)!r} = {u.mask(v)!r} escapes"
                break
        if def_wit:
            break

    return PresqueezedReport(
        algebra=algebra,
        approx_well_defined=well,
        approx_witnesses=wit,
        boolean_definable=boolean,
        boolean_witness=bool_wit,
        squeezed_closure_witness=sq_wit,
        definable_closure_witness=def_wit,
    )
