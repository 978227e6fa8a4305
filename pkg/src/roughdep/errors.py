"""Exception hierarchy for the workbench.

Every precondition failure raises a subclass of WorkbenchError carrying a
human-readable diagnostic; nothing is signalled through sentinel values
except where an operation is documented as partial.
"""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class UniverseError(WorkbenchError):
    """Bad universe definition (empty, duplicate labels, over the cap)."""


class UniverseMismatchError(WorkbenchError):
    """Two operands live on different universes."""


class TableError(WorkbenchError):
    """Malformed information table (unknown attribute, empty selection)."""


class RaggedRowError(TableError):
    """A row has the wrong number of cells; carries the row name."""

    def __init__(self, row: str, got: int, expected: int):
        super().__init__(f"row {row!r} has {got} cells, expected {expected}")
        self.row = row
        self.got = got
        self.expected = expected


class RelationError(WorkbenchError):
    """A relation misses a required property (e.g. not an equivalence)."""


class AntiSerialityError(RelationError):
    """Some element lies in no neighborhood; carries the orphan label."""

    def __init__(self, label: str):
        super().__init__(f"element {label!r} lies in no neighborhood")
        self.label = label


class CoverError(WorkbenchError):
    """Bad cover (empty member, empty cover, improper where proper needed)."""


class UncoveredElementError(CoverError):
    """A point of interest is in no cover member; no silent conventions."""

    def __init__(self, label: str):
        super().__init__(f"element {label!r} is in no cover member")
        self.label = label


class BaseConditionError(CoverError):
    """Cover is not a topology base; carries the witness triple."""

    def __init__(self, witness: str):
        super().__init__(f"not a base for a topology: {witness}")
        self.witness = witness


class OperatorAxiomError(WorkbenchError):
    """Lower/upper operator pair violates a construction axiom."""


class GranuleError(WorkbenchError):
    """Point-granule request failed (element in no granule)."""


class UndefinedGammaError(WorkbenchError):
    """Membership degree requested where the point granule is undefined."""


class ProbabilityError(WorkbenchError):
    """Bad probability space (weights, atoms) or non-event subset."""


class CrossSpaceError(ProbabilityError):
    """Events from different probability spaces were combined."""


class AlgebraError(WorkbenchError):
    """Implication-algebra construction or axiom failure."""


class NotDenseError(WorkbenchError):
    """A dense set family was required; carries the uncovered element."""

    def __init__(self, label: str):
        super().__init__(f"family is not dense: {label!r} uncovered")
        self.label = label


class DefinabilityError(WorkbenchError):
    """Argument is not a definable object of the squeezed system."""


class BudgetError(WorkbenchError):
    """An enumeration would exceed its configured budget."""


class FormatError(WorkbenchError):
    """Malformed input file; carries location info where available."""
