"""Set-valued dependence: deviance functions, trails, and the trail order.

Positive deviance picks a maximal-probability proper sub-event of the meet
whose probability stays below the covariance; negative deviance picks a
minimal-probability proper sub-event of the meet's complement whose
probability reaches the covariance deficit.  Choice is deterministic under
a named policy, and empty candidate sets resolve to the empty event by
convention (a strict mode returns None instead, and the suite records where
the convention fired).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .probability import Event, FiniteProbSpace, covariance
from .reports import LawResult, SuiteReport, fmt_fraction


@dataclass(frozen=True)
class DeviancePolicy:
    """Deterministic choice keys for the deviance functions.

    Maximal picks order by probability descending, then cardinality
    descending, then the lexicographic tie-break on sorted index tuples;
    minimal picks flip the first two.  lex_reverse flips only the final
    tie-break, which never changes the probability of the chosen event.
    """

    name: str = "default"
    lex_reverse: bool = False

    def pick_max(self, candidates: list[Event]) -> Event:
        best_p = max(e.p for e in candidates)
        pool = [e for e in candidates if e.p == best_p]
        best_card = max(len(e.mask) for e in pool)
        pool = [e for e in pool if len(e.mask) == best_card]
        key = lambda e: e.mask.lex_key()
        return max(pool, key=key) if self.lex_reverse else min(pool, key=key)

    def pick_min(self, candidates: list[Event]) -> Event:
        best_p = min(e.p for e in candidates)
        pool = [e for e in candidates if e.p == best_p]
        best_card = min(len(e.mask) for e in pool)
        pool = [e for e in pool if len(e.mask) == best_card]
        key = lambda e: e.mask.lex_key()
        return max(pool, key=key) if self.lex_reverse else min(pool, key=key)


DEFAULT_POLICY = DeviancePolicy()


def _proper_subevents(space: FiniteProbSpace, bound_bits: int) -> list[Event]:
    out = []
    bound_sel = space.atombits_of(space.universe.mask(bound_bits))
    sel = bound_sel
    while True:
        if sel != bound_sel:
            out.append(space.event_of_atombits(sel))
        if sel == 0:
            break
        sel = (sel - 1) & bound_sel
    return out


def positive_deviance(
    x: Event, y: Event, policy: DeviancePolicy = DEFAULT_POLICY, strict: bool = False
) -> Event | None:
    """Largest-probability proper sub-event of the meet within the
    covariance budget; empty event when no candidate exists (None in
    strict mode)."""
    x._check(y)
    space = x.space
    budget = covariance(x, y)
    meet = (x & y).mask.bits
    candidates = [e for e in _proper_subevents(space, meet) if e.p <= budget]
    if not candidates:
        return None if strict else space.empty_event()
    return policy.pick_max(candidates)


def negative_deviance(
    x: Event, y: Event, policy: DeviancePolicy = DEFAULT_POLICY, strict: bool = False
) -> Event | None:
    """Least-probability proper sub-event of the meet's complement whose
    probability covers the covariance deficit; empty-event convention."""
    x._check(y)
    space = x.space
    need = -covariance(x, y)
    comp = (x & y).mask.complement().bits
    candidates = [e for e in _proper_subevents(space, comp) if e.p >= need]
    if not candidates:
        return None if strict else space.empty_event()
    return policy.pick_min(candidates)


def deviance_equivalent(
    x: Event, y: Event, policy: DeviancePolicy = DEFAULT_POLICY
) -> bool:
    """Both deviance functions identify the pair when re-applied to their
    own value against either argument."""
    pxy = positive_deviance(x, y, policy)
    sxy = negative_deviance(x, y, policy)
    return (
        positive_deviance(pxy, x, policy) == positive_deviance(pxy, y, policy)
        and negative_deviance(sxy, x, policy) == negative_deviance(sxy, y, policy)
    )


# ---------------------------------------------------------------------------
# law suite


def deviance_law_suite(
    space: FiniteProbSpace, policy: DeviancePolicy = DEFAULT_POLICY
) -> SuiteReport:
    """Exhaustive deviance laws plus the witness searches.

    The self-collapse implication (deviance of a pair with itself being
    trivial forces a null event) fails on finite spaces whenever the budget
    is unattainable below the meet; those witnesses are kept as refutation
    artifacts and do not gate.
    """
    events = space.events()
    empty = space.empty_event()
    full = space.full_event()
    results: list[LawResult] = []

    def law(name: str, fails: list[str], checked: int, note: str = "") -> None:
        results.append(
            LawResult(name, "pass" if not fails else "fail", checked,
                      tuple(fails[:3]), note=note)
        )

    pairs = [(x, y) for x in events for y in events]
    w = [
        f"x={x!r}, y={y!r}"
        for x, y in pairs
        if positive_deviance(x, y, policy) != positive_deviance(y, x, policy)
    ]
    law("symmetry", w, len(pairs))
    w = [
        f"x={x!r}, y={y!r}"
        for x, y in pairs
        if negative_deviance(x, y, policy) != negative_deviance(y, x, policy)
    ]
    law("negative-symmetry", w, len(pairs))

    w = [
        f"x={x!r}"
        for x in events
        if not deviance_equivalent(positive_deviance(x, empty, policy), empty, policy)
    ]
    law("bottom", w, len(events))
    w = [
        f"x={x!r}"
        for x in events
        if not deviance_equivalent(positive_deviance(x, full, policy), empty, policy)
    ]
    law("top", w, len(events))
    w = [
        f"x={x!r}"
        for x in events
        if not deviance_equivalent(negative_deviance(x, empty, policy), empty, policy)
    ]
    law("negative-bottom", w, len(events))
    w = [
        f"x={x!r}"
        for x in events
        if not deviance_equivalent(negative_deviance(x, full, policy), empty, policy)
    ]
    law("negative-top", w, len(events))

    w = [f"x={x!r}" for x in events if not deviance_equivalent(x, x, policy)]
    law("self-equivalence", w, len(events))

    ae = [
        f"x={x!r} (p={fmt_fraction(x.p)})"
        for x in events
        if deviance_equivalent(positive_deviance(x, x, policy), empty, policy)
        and x.p != 0
    ]
    results.append(
        LawResult(
            name="self-collapse-forces-null",
            verdict="refuted" if ae else "pass",
            checked=len(events),
            witnesses=tuple(ae[:5]),
            kind="diagnostic",
            note="finite spaces admit nonnull events whose self-deviance "
                 "collapses because the budget is unattainable",
        )
    )

    found: list[str] = []
    for x, y, z in itertools.product(events, repeat=3):
        lhs = positive_deviance(x, positive_deviance(y, z, policy), policy)
        rhs = positive_deviance(positive_deviance(x, y, policy), z, policy)
        if not deviance_equivalent(lhs, rhs, policy):
            found.append(f"x={x!r}, y={y!r}, z={z!r}")
            break
    results.append(
        LawResult("non-associativity", "witnesses-found" if found else "no-witness",
                  len(events) ** 3, tuple(found), kind="search"))

    fired = [
        f"x={x!r}, y={y!r}"
        for x, y in pairs
        if positive_deviance(x, y, policy, strict=True) is None
        or negative_deviance(x, y, policy, strict=True) is None
    ]
    results.append(
        LawResult(
            name="strict-domain-proper",
            verdict="witnesses-found" if fired else "no-witness",
            checked=len(pairs),
            witnesses=tuple(fired[:3]),
            kind="diagnostic",
            note="pairs where the empty-event convention fired; under the "
                 "strict reading the functions are genuinely partial",
        )
    )

    mixed = []
    for x, y in pairs:
        pd = positive_deviance(x, y, policy)
        nd = negative_deviance(x, y, policy)
        if pd.p > 0 and not nd.p > 0:
            mixed.append(f"x={x!r}, y={y!r}")
    results.append(
        LawResult(
            name="nonnull-positive-forces-nonnull-negative",
            verdict="refuted" if mixed else "pass",
            checked=len(pairs),
            witnesses=tuple(mixed[:3]),
            kind="diagnostic",
            note="documented reading of a garbled source display; checked as "
                 "an implication and reported either way",
        )
    )
    return SuiteReport(
        suite="deviance-laws",
        results=results,
        meta={"atoms": str(space.atom_count), "policy": policy.name},
    )


# ---------------------------------------------------------------------------
# dependence trails


@dataclass(frozen=True)
class DependenceTrail:
    """Iterated positive deviance of a pair, up to stabilization.

    steps holds the computed prefix including the first repeated entry, so
    the stabilization is visible; length counts the entries before the point
    where the trail provably repeats.
    """

    source: tuple[Event, Event]
    steps: tuple[Event, ...]

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    @property
    def probabilities(self) -> tuple[Fraction, ...]:
        return tuple(e.p for e in self.steps)


def dependence_trail(
    x: Event, z: Event, policy: DeviancePolicy = DEFAULT_POLICY
) -> DependenceTrail:
    """Iterate w -> positive_deviance(w, x) from positive_deviance(x, z).

    Each non-convention step is a strict subset of its predecessor, so the
    trail stabilizes within the event count; a cycle guard backs that up.
    """
    space = x.space
    steps = [positive_deviance(x, z, policy)]
    seen = {steps[0].atombits}
    limit = 1 << space.atom_count
    while True:
        nxt = positive_deviance(steps[-1], x, policy)
        steps.append(nxt)
        if nxt == steps[-2]:
            break
        if len(steps) > limit + 1:
            raise RuntimeError("trail failed to stabilize within the event count")
        if nxt.atombits in seen:
            # revisit without immediate repeat would be a cycle
            raise RuntimeError("trail entered a cycle")
        seen.add(nxt.atombits)
    return DependenceTrail(source=(x, z), steps=tuple(steps))


def trail_leq(a: DependenceTrail, b: DependenceTrail) -> bool:
    """Componentwise probability comparison after padding with the final
    (stabilized) entries."""
    pa, pb = list(a.probabilities), list(b.probabilities)
    n = max(len(pa), len(pb))
    pa += [pa[-1]] * (n - len(pa))
    pb += [pb[-1]] * (n - len(pb))
    return all(x <= y for x, y in zip(pa, pb))


def trail_suite(
    space: FiniteProbSpace, policy: DeviancePolicy = DEFAULT_POLICY
) -> SuiteReport:
    """Trail laws over all event pairs: stepwise probability decay, bounded
    stabilization, and the quasi-order facts with an antisymmetry failure."""
    events = space.events()
    trails = [
        dependence_trail(x, z, policy) for x in events for z in events
    ]
    results: list[LawResult] = []

    w = []
    for t in trails:
        ps = t.probabilities
        if any(ps[i + 1] > ps[i] for i in range(len(ps) - 1)):
            w.append(f"source={t.source[0]!r},{t.source[1]!r}")
            break
    results.append(LawResult("stepwise-decay", "pass" if not w else "fail",
                             len(trails), tuple(w)))

    bound = 1 << space.atom_count
    w = [
        f"source={t.source[0]!r},{t.source[1]!r}"
        for t in trails
        if t.length > bound
    ]
    results.append(LawResult("bounded-stabilization", "pass" if not w else "fail",
                             len(trails), tuple(w[:3])))

    sample = trails[:: max(1, len(trails) // 40)]
    w = [str(i) for i, t in enumerate(sample) if not trail_leq(t, t)]
    results.append(LawResult("order-reflexive", "pass" if not w else "fail",
                             len(sample), tuple(w[:3])))
    w = []
    for a, b, c in itertools.product(sample[:12], repeat=3):
        if trail_leq(a, b) and trail_leq(b, c) and not trail_leq(a, c):
            w.append("transitivity broke")
            break
    results.append(LawResult("order-transitive", "pass" if not w else "fail",
                             min(len(sample), 12) ** 3, tuple(w)))

    anti = []
    for i, a in enumerate(trails):
        for b in trails[i + 1 :]:
            steps_a = tuple(e.atombits for e in a.steps)
            steps_b = tuple(e.atombits for e in b.steps)
            if steps_a != steps_b and trail_leq(a, b) and trail_leq(b, a):
                anti.append(
                    f"{a.source[0]!r},{a.source[1]!r} vs {b.source[0]!r},{b.source[1]!r}"
                )
                break
        if anti:
            break
    results.append(
        LawResult(
            name="antisymmetry-failure",
            verdict="witnesses-found" if anti else "no-witness",
            checked=len(trails) ** 2,
            witnesses=tuple(anti),
            kind="search",
            note="mutually comparable trails with different steps; equal "
                 "probabilities never force equal events",
        )
    )
    return SuiteReport(
        suite="dependence-trails",
        results=results,
        meta={"atoms": str(space.atom_count), "policy": policy.name},
    )
