"""Small shared instances used across the test and acceptance suites."""

from __future__ import annotations

from fractions import Fraction

from .core import BinaryRelation, InformationTable, Universe
from .covers import CoverSpace
from .probability import FiniteProbSpace
from .squeezed import ToleranceSpace
from .tarski import TarskiSet


def two_block_universe() -> Universe:
    return Universe.of_size(4)


def two_block_equivalence() -> BinaryRelation:
    """Four elements split into the classes {0,1} and {2,3}."""
    return BinaryRelation.from_classes(two_block_universe(), [[0, 1], [2, 3]])


def overlapping_cover() -> CoverSpace:
    """{{0,1},{1,2}} on a three-element universe; not unary."""
    u = Universe.of_size(3)
    return CoverSpace.of_indices(u, [[0, 1], [1, 2]])


def nested_cover() -> CoverSpace:
    """{{0},{0,1},{2}} on a three-element universe; unary."""
    u = Universe.of_size(3)
    return CoverSpace.of_indices(u, [[0], [0, 1], [2]])


def uniform_four_atom_space() -> FiniteProbSpace:
    return FiniteProbSpace.uniform(("a", "b", "c", "d"))


def skewed_four_atom_space() -> FiniteProbSpace:
    return FiniteProbSpace.weighted(
        ("a", "b", "c", "d"),
        (Fraction(1, 16), Fraction(7, 16), Fraction(4, 16), Fraction(4, 16)),
    )


def small_tarski_set() -> TarskiSet:
    """Universe {0,1,2} with the family {{0,1},{2}}."""
    u = Universe.of_size(3)
    return TarskiSet(u, (u.subset_of_indices([0, 1]), u.subset_of_indices([2])))


def path_tolerance() -> ToleranceSpace:
    """0 related to 1 and 1 related to 2 on a three-element universe."""
    u = Universe.of_size(3)
    return ToleranceSpace(u, frozenset({(0, 1), (1, 2)}))


DIAGNOSTICS_CSV = """\
name,Temp.,Body Pain,Skin,H.ache,Dress,Color,State
A,Set1,Medium,1,No,red,red,F0
B,Set2,None,1,Yes,pink,red,F0
C,Set1,Mild,,No,purple,pink,Test
E,Medium,Medium,1,Yes,,white,F1
F,High,None,1,Yes,white,,Test
G,Set1,High,,Yes,F1
"""


def diagnostics_table() -> InformationTable:
    """The incomplete medical-diagnostics table, short row padded with NA."""
    rows = []
    for line in DIAGNOSTICS_CSV.strip().splitlines()[1:]:
        cells = line.split(",")
        name = cells[0]
        rows.append(
            (name, [[] if c == "" else c.split("|") for c in cells[1:]])
        )
    attrs = DIAGNOSTICS_CSV.splitlines()[0].split(",")[1:]
    return InformationTable.from_rows(attrs, rows, ragged="pad")
