"""Registry and result types shared by the harness and the configuration"""

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any


class Group(StrEnum):
    """Registry groups an identity can belong to."""

    LEMMAS = "lemmas"
    THEOREMS_ODD = "theorems_odd"
    THEOREMS_EVEN = "theorems_even"
    THEOREMS_WEIGHTED = "theorems_weighted"
    STRIDE_ONE = "away"
    INTEGRALS_CLASSIC = "integrals_valean"
    INTEGRALS_NEW = "integrals_new"
    AUX_SERIES = "aux_series"
    PROPERTIES = "properties"


class ToleranceClass(StrEnum):
    """Tolerance classes mapped onto ToleranceConfig fields."""

    LEMMA = "lemma"
    ALTERNATING = "alternating"
    POSITIVE = "positive"
    QUADRATURE = "quadrature"
    NEW_INTEGRALS = "new_integrals"
    FOURIER = "fourier"
    WEIGHTED = "weighted"
    PROPERTY = "property"
    EXACT = "exact"


@dataclass(frozen=True)
class Effort:
    """Work spent on the left-hand side."""

    terms: int = 0
    levels: int = 0

    def __add__(self, other: "Effort") -> "Effort":
        return Effort(self.terms + other.terms, max(self.levels, other.levels))


@dataclass(frozen=True)
class Measurement:
    """A computed value together with the effort it took.

    ``value`` is an XReal for numeric records and a ClosedForm for exact ones.
    """

    value: Any
    effort: Effort = field(default_factory=Effort)


@dataclass(frozen=True)
class IdentityRecord:
    """One registered identity: how to compute both sides and how close they must be."""

    id: str
    group: Group
    lhs: Callable[[Any], Measurement]
    rhs: Callable[[Any], Any]
    tol_class: ToleranceClass
    anchor: str
    tol: float | None = None

    def __post_init__(self):
        if not self.anchor:
            raise ValueError(f"identity {self.id} has no anchor")
        if self.tol is not None and self.tol <= 0:
            raise ValueError(f"identity {self.id} has non-positive tolerance")

    @property
    def exact(self) -> bool:
        return self.tol_class is ToleranceClass.EXACT


@dataclass
class VerificationResult:
    """Measured outcome of one identity."""

    id: str
    group: Group
    lhs_value: Any
    rhs_value: Any
    abs_diff: Any
    passed: bool
    tol: float
    effort: Effort
    wall_time: float
    anchor: str
    digits: float | None = None
    reason: str | None = None
