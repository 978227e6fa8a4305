"""Shared report shapes for the law suites.

A LawResult is one verified law or one witness search; a SuiteReport is an
ordered bundle of them.  Laws gate (verdict pass/fail), searches and
diagnostics never gate; refutation artifacts ride along as plain entries so
that downstream serialization keeps them first-class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass(frozen=True)
class LawResult:
    name: str
    verdict: str  # pass | fail | witnesses-found | no-witness | refuted
    checked: int
    witnesses: tuple[str, ...] = ()
    kind: str = "law"  # law | search | diagnostic
    note: str = ""

    @property
    def gating(self) -> bool:
        return self.kind == "law"

    @property
    def ok(self) -> bool:
        return self.verdict == "pass" or not self.gating

    def to_dict(self) -> dict[str, Any]:
        return {
            "law": self.name,
            "verdict": self.verdict,
            "kind": self.kind,
            "checked": self.checked,
            "witnesses": list(self.witnesses),
            "note": self.note,
        }


@dataclass
class SuiteReport:
    suite: str
    results: list[LawResult]
    meta: dict[str, str] = field(default_factory=dict)

    def passed(self) -> bool:
        return all(r.ok for r in self.results)

    def result(self, name: str) -> LawResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self) -> list[LawResult]:
        return [r for r in self.results if not r.ok]

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "meta": dict(sorted(self.meta.items())),
            "passed": self.passed(),
            "results": [r.to_dict() for r in self.results],
        }


def fmt_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
