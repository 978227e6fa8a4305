"""Side-by-side comparison of rough and probabilistic dependence.

The shared-property report evaluates one aligned law list against the
infimal rough degree on an operator space and against positive deviance on
a probability space, then classifies each law as shared or not.  Embedding
enumeration and the degree-preservation hunt put both dependence notions
inside implication algebras and look for transport failures across
certified semi-morphisms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from .core import SubsetMask, Universe
from .covers import CoverSpace
from .dependence import dependence_degree
from .deviant import (
    DEFAULT_POLICY,
    DeviancePolicy,
    deviance_equivalent,
    positive_deviance,
)
from .errors import AlgebraError, BudgetError
from .granular import OperatorSpace
from .probability import Event, FiniteProbSpace
from .reports import LawResult, SuiteReport
from .tarski import (
    FiniteTarskiAlgebra,
    full_power_algebra,
    is_homomorphism,
    is_semi_morphism,
    semi_morphisms,
)

EXPECTED_SHARED = ("symmetry", "bottom", "almost-empty")


@dataclass(frozen=True)
class LawComparison:
    name: str
    rough_ok: bool
    rough_witness: str
    prob_ok: bool
    prob_witness: str

    @property
    def shared(self) -> bool:
        return self.rough_ok and self.prob_ok

    def to_dict(self) -> dict[str, Any]:
        return {
            "law": self.name,
            "rough": {"ok": self.rough_ok, "witness": self.rough_witness},
            "probabilistic": {"ok": self.prob_ok, "witness": self.prob_witness},
            "shared": self.shared,
        }


@dataclass(frozen=True)
class ComparisonReport:
    laws: tuple[LawComparison, ...]
    extras: tuple[LawResult, ...]
    policy: str

    @property
    def shared(self) -> tuple[str, ...]:
        return tuple(l.name for l in self.laws if l.shared)

    @property
    def unshared(self) -> tuple[str, ...]:
        return tuple(l.name for l in self.laws if not l.shared)

    @property
    def matches_expected(self) -> bool:
        return set(self.shared) == set(EXPECTED_SHARED)

    def to_dict(self) -> dict[str, Any]:
        return {
            "policy": self.policy,
            "laws": [l.to_dict() for l in self.laws],
            "shared": list(self.shared),
            "unshared": list(self.unshared),
            "expected_shared": list(EXPECTED_SHARED),
            "matches_expected": self.matches_expected,
            "extras": [e.to_dict() for e in self.extras],
        }


def _beta_bits(space: OperatorSpace, a: int, b: int) -> int | None:
    u = space.universe
    d = dependence_degree(u.mask(a), u.mask(b), space, "infimal")
    return d.value.bits if d.defined else None


def shared_property_report(
    space: OperatorSpace,
    prob: FiniteProbSpace,
    policy: DeviancePolicy = DEFAULT_POLICY,
) -> ComparisonReport:
    """Evaluate the aligned law list on both sides of the comparison.

    Laws are stated in one shape and instantiated twice: the infimal degree
    with set equality on the rough side, positive deviance with deviance
    equivalence on the probabilistic side.  The self-collapse law is aligned
    in its null-input form (null input forces a collapsed value); the
    literal converse direction is attached as a non-gating extra because
    finite spaces refute it."""
    u = space.universe
    n = u.size
    masks = list(range(1 << n))
    full = (1 << n) - 1
    events = prob.events()
    empty_ev = prob.empty_event()
    full_ev = prob.full_event()

    def rough_all_pairs(pred) -> tuple[bool, str]:
        for a in masks:
            for b in masks:
                msg = pred(a, b)
                if msg:
                    return False, msg
        return True, ""

    def prob_all_pairs(pred) -> tuple[bool, str]:
        for x in events:
            for y in events:
                msg = pred(x, y)
                if msg:
                    return False, msg
        return True, ""

    laws: list[LawComparison] = []

    def add(name, rough_pair, prob_pair):
        laws.append(LawComparison(name, rough_pair[0], rough_pair[1],
                                  prob_pair[0], prob_pair[1]))

    add(
        "symmetry",
        rough_all_pairs(
            lambda a, b: ""
            if _beta_bits(space, a, b) == _beta_bits(space, b, a)
            else f"A={u.mask(a)!r}, B={u.mask(b)!r}"
        ),
        prob_all_pairs(
            lambda x, y: ""
            if positive_deviance(x, y, policy) == positive_deviance(y, x, policy)
            else f"x={x!r}, y={y!r}"
        ),
    )

    def rough_bottom(a, b):
        if b != 0:
            return ""
        return "" if _beta_bits(space, 0, a) == 0 else f"A={u.mask(a)!r}"

    def prob_bottom(x, y):
        if y.mask.bits != 0:
            return ""
        v = positive_deviance(x, empty_ev, policy)
        return "" if deviance_equivalent(v, empty_ev, policy) else f"x={x!r}"

    add("bottom", rough_all_pairs(rough_bottom), prob_all_pairs(prob_bottom))

    def rough_top(a, b):
        if b != full:
            return ""
        return "" if _beta_bits(space, a, full) == 0 else f"A={u.mask(a)!r}"

    def prob_top(x, y):
        if y.mask.bits != (1 << prob.universe.size) - 1:
            return ""
        v = positive_deviance(x, full_ev, policy)
        return "" if deviance_equivalent(v, empty_ev, policy) else f"x={x!r}"

    add("top-collapse", rough_all_pairs(rough_top), prob_all_pairs(prob_top))

    def rough_ae(a, b):
        if a != b or space.lower_bits(a) != 0:
            return ""
        return "" if _beta_bits(space, a, a) == 0 else f"A={u.mask(a)!r}"

    def prob_ae(x, y):
        if x != y or x.p != 0:
            return ""
        v = positive_deviance(x, x, policy)
        return "" if deviance_equivalent(v, empty_ev, policy) else f"x={x!r}"

    add("almost-empty", rough_all_pairs(rough_ae), prob_all_pairs(prob_ae))

    def rough_idem(a, b):
        d = _beta_bits(space, a, b)
        if d is None:
            return f"undefined at A={u.mask(a)!r}, B={u.mask(b)!r}"
        again = _beta_bits(space, d, a)
        return "" if again == d else f"A={u.mask(a)!r}, B={u.mask(b)!r}"

    def prob_idem(x, y):
        v = positive_deviance(x, y, policy)
        again = positive_deviance(v, x, policy)
        return "" if again == v else f"x={x!r}, y={y!r}"

    add("idempotence", rough_all_pairs(rough_idem), prob_all_pairs(prob_idem))

    def rough_union() -> tuple[bool, str]:
        for a, b, c in itertools.product(masks, repeat=3):
            d1 = _beta_bits(space, a, b)
            d2 = _beta_bits(space, a, b | c)
            if d1 is None or d2 is None or d1 & ~d2:
                return False, f"A={u.mask(a)!r}, B={u.mask(b)!r}, C={u.mask(c)!r}"
        return True, ""

    def prob_union() -> tuple[bool, str]:
        for x, y, z in itertools.product(events, repeat=3):
            v1 = positive_deviance(x, y, policy)
            v2 = positive_deviance(x, y | z, policy)
            if v1.mask.bits & ~v2.mask.bits:
                return False, f"x={x!r}, y={y!r}, z={z!r}"
        return True, ""

    add("union-monotone", rough_union(), prob_union())

    literal = [
        f"x={x!r}"
        for x in events
        if deviance_equivalent(positive_deviance(x, x, policy), empty_ev, policy)
        and x.p != 0
    ]
    extras = (
        LawResult(
            name="almost-empty-literal-converse",
            verdict="refuted" if literal else "pass",
            checked=len(events),
            witnesses=tuple(literal[:3]),
            kind="diagnostic",
            note="the converse direction (collapsed self-deviance forces a "
                 "null event) fails on finite spaces with unattainable budgets",
        ),
    )
    return ComparisonReport(laws=tuple(laws), extras=extras, policy=policy.name)


# ---------------------------------------------------------------------------
# embeddings


@dataclass(frozen=True)
class EmbeddingReport:
    semi: tuple[tuple[int, ...], ...]
    homo: tuple[tuple[int, ...], ...]
    recertified: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "semi_morphisms": [list(m) for m in self.semi],
            "homomorphisms": [list(m) for m in self.homo],
            "recertified": self.recertified,
        }


def embeddings_between(
    source: FiniteTarskiAlgebra,
    target: FiniteTarskiAlgebra,
    budget: int = 10_000_000,
) -> EmbeddingReport:
    """All injective semi-morphisms and homomorphisms, each re-certified.

    An empty result is a legitimate finding (for instance when the source
    outnumbers the target)."""
    if source.n > target.n:
        return EmbeddingReport(semi=(), homo=(), recertified=True)
    semi = semi_morphisms(source, target, budget=budget, injective_only=True)
    homo = tuple(m for m in semi if is_homomorphism(source, target, m))
    recert = all(is_semi_morphism(source, target, m)[0] for m in semi)
    return EmbeddingReport(semi=semi, homo=homo, recertified=recert)


@dataclass(frozen=True)
class CertifiedMap:
    source: FiniteTarskiAlgebra
    target: FiniteTarskiAlgebra
    mapping: tuple[int, ...]
    kind: str

    def image_mask(self, source_index: int) -> SubsetMask:
        return self.target.masks()[self.mapping[source_index]]


def certify_map(
    source: FiniteTarskiAlgebra,
    target: FiniteTarskiAlgebra,
    mapping: tuple[int, ...],
    kind: str = "given",
) -> CertifiedMap:
    ok, witness = is_semi_morphism(source, target, mapping)
    if not ok:
        raise AlgebraError(f"map is not a semi-morphism: {witness}")
    return CertifiedMap(source=source, target=target, mapping=mapping, kind=kind)


def identity_map(algebra: FiniteTarskiAlgebra) -> CertifiedMap:
    return certify_map(algebra, algebra, tuple(range(algebra.n)), kind="identity")


# ---------------------------------------------------------------------------
# preservation hunt


@dataclass(frozen=True)
class HuntReport:
    mode: str
    witness: str
    pairs_checked: int
    skipped: int

    @property
    def found(self) -> bool:
        return bool(self.witness)

    @property
    def exhaustive_pass(self) -> bool:
        return not self.witness

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "witness": self.witness,
            "pairs_checked": self.pairs_checked,
            "skipped": self.skipped,
            "exhaustive_pass": self.exhaustive_pass,
        }


def _image_infimal(
    granules: list[int], definites: list[int], a: int, b: int
) -> int | None:
    union = 0
    for g in granules:
        if g & ~a == 0 and g & ~b == 0:
            union |= g
    inside = [d for d in definites if d & ~union == 0]
    if not inside:
        return None
    fold = 0
    for d in inside:
        fold |= d
    return fold if fold in inside else None


def preservation_hunt(
    space: OperatorSpace,
    cmap: CertifiedMap,
    mode: str = "deviance",
    prob: FiniteProbSpace | None = None,
    policy: DeviancePolicy = DEFAULT_POLICY,
) -> HuntReport:
    """Scan source pairs for a degree the map fails to transport.

    mode "image" reinterprets the degree on the target through the mapped
    granulation and definite elements (identity maps pass exhaustively);
    mode "deviance" reads the target-side dependence as positive deviance
    on the given probability space.  Both interpretations are extrapolations
    beyond the source notion and are labelled as such in the report."""
    src_masks = cmap.source.masks()
    index_of = {m.bits: i for i, m in enumerate(src_masks)}
    checked = 0
    skipped = 0

    if mode == "image":
        granules = []
        for g in space.granules:
            if g.bits not in index_of:
                raise AlgebraError("granule outside the source carrier")
            granules.append(cmap.image_mask(index_of[g.bits]).bits)
        definites = []
        for d in space.definite_elements():
            if d.bits in index_of:
                definites.append(cmap.image_mask(index_of[d.bits]).bits)
    elif mode == "deviance":
        if prob is None:
            raise AlgebraError("deviance mode needs a probability space")
    else:
        raise AlgebraError(f"unknown hunt mode {mode!r}")

    for i, a in enumerate(src_masks):
        for j, b in enumerate(src_masks):
            d = dependence_degree(a, b, space, "infimal")
            if not d.defined or d.value.bits not in index_of:
                skipped += 1
                continue
            checked += 1
            transported = cmap.image_mask(index_of[d.value.bits]).bits
            fa = cmap.image_mask(i)
            fb = cmap.image_mask(j)
            if mode == "image":
                target_value = _image_infimal(granules, definites, fa.bits, fb.bits)
            else:
                ev = positive_deviance(
                    Event(prob, prob.universe.mask(fa.bits)),
                    Event(prob, prob.universe.mask(fb.bits)),
                    policy,
                )
                target_value = ev.mask.bits
            if target_value != transported:
                return HuntReport(
                    mode=mode,
                    witness=(
                        f"A={a!r}, B={b!r}: transported "
                        f"{space.universe.mask(transported)!r}, target-side "
                        f"{'undefined' if target_value is None else repr(space.universe.mask(target_value))}"
                    ),
                    pairs_checked=checked,
                    skipped=skipped,
                )
    return HuntReport(mode=mode, witness="", pairs_checked=checked, skipped=skipped)


@dataclass(frozen=True)
class SweepReport:
    instances: int
    witnesses: tuple[str, ...]
    exhaustiveness_certificate: bool
    needs_larger_corpus: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "instances": self.instances,
            "witnesses": list(self.witnesses),
            "exhaustiveness_certificate": self.exhaustiveness_certificate,
            "needs_larger_corpus": self.needs_larger_corpus,
        }


def all_proper_covers(universe: Universe):
    """Every proper cover on the universe, by nonempty-member subsets."""
    n = universe.size
    member_pool = list(range(1, 1 << n))
    full = (1 << n) - 1
    for selection in range(1, 1 << len(member_pool)):
        members = [
            member_pool[i]
            for i in range(len(member_pool))
            if selection >> i & 1
        ]
        bits = 0
        for m in members:
            bits |= m
        if bits == full:
            yield CoverSpace(
                universe, tuple(universe.mask(m) for m in members)
            )


def preservation_sweep(
    universe_size: int = 3,
    policy: DeviancePolicy = DEFAULT_POLICY,
    upper_kind: str = "u1",
    max_witnesses: int = 3,
) -> SweepReport:
    """Hunt over every proper cover of a small universe under the identity
    map into the uniform space, deviance interpretation on the target."""
    universe = Universe.of_size(universe_size)
    prob = FiniteProbSpace.uniform(universe.labels)
    algebra = full_power_algebra(universe)
    ident = identity_map(algebra)
    witnesses: list[str] = []
    instances = 0
    for cover in all_proper_covers(universe):
        instances += 1
        space = OperatorSpace.from_cover(cover, upper_kind)
        report = preservation_hunt(space, ident, "deviance", prob, policy)
        if report.found and len(witnesses) < max_witnesses:
            witnesses.append(f"cover={[m for m in cover.members]!r}: {report.witness}")
    return SweepReport(
        instances=instances,
        witnesses=tuple(witnesses),
        exhaustiveness_certificate=not witnesses,
        needs_larger_corpus=not witnesses,
    )
