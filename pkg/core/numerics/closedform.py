"""Exact rational combinations over a fixed basis of constants."""

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from types import MappingProxyType

from core.exceptions import ClosedFormError
from core.numerics.polylog import im_li3_1pi
from core.numerics.specfun import catalan, zeta_int
from core.numerics.xprec import CTX, XReal, const, to_xreal


class BasisConstant(StrEnum):
    ONE = "ONE"
    PI = "PI"
    PI2 = "PI2"
    PI3 = "PI3"
    LN2 = "LN2"
    PI_LN2 = "PI_LN2"
    PI_LN2SQ = "PI_LN2SQ"
    PI2_LN2 = "PI2_LN2"
    ZETA3 = "ZETA3"
    G = "G"
    G_PI = "G_PI"
    G_LN2 = "G_LN2"
    IM_LI3 = "IM_LI3"


PI_POLYNOMIAL = frozenset(
    {BasisConstant.ONE, BasisConstant.PI, BasisConstant.PI2, BasisConstant.PI3}
)


def basis_value(tag: BasisConstant | str) -> XReal:
    """Numerical value of one basis constant at working precision."""
    pi = const("pi")
    ln2 = const("ln2")
    match BasisConstant(tag):
        case BasisConstant.ONE:
            return CTX.one
        case BasisConstant.PI:
            return pi
        case BasisConstant.PI2:
            return pi**2
        case BasisConstant.PI3:
            return pi**3
        case BasisConstant.LN2:
            return ln2
        case BasisConstant.PI_LN2:
            return pi * ln2
        case BasisConstant.PI_LN2SQ:
            return pi * ln2**2
        case BasisConstant.PI2_LN2:
            return pi**2 * ln2
        case BasisConstant.ZETA3:
            return zeta_int(3)
        case BasisConstant.G:
            return catalan()
        case BasisConstant.G_PI:
            return catalan() * pi
        case BasisConstant.G_LN2:
            return catalan() * ln2
        case BasisConstant.IM_LI3:
            return im_li3_1pi()


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise ClosedFormError(f"closed-form coefficients must be exact, got float {value}")
    return Fraction(value)


@dataclass(frozen=True)
class ClosedForm(Mapping):
    """Immutable map BasisConstant -> Fraction with zero entries dropped.

    ``branch`` records which case of a piecewise formula produced the value;
    it is informational and ignored by equality.
    """

    coefficients: Mapping[BasisConstant, Fraction] = field(default_factory=dict)
    branch: str = field(default="", compare=False)

    def __post_init__(self):
        cleaned = {}
        for tag, value in self.coefficients.items():
            q = _as_fraction(value)
            if q:
                cleaned[BasisConstant(tag)] = q
        object.__setattr__(self, "coefficients", MappingProxyType(cleaned))

    @classmethod
    def of(cls, branch: str = "", **coefficients) -> "ClosedForm":
        """ClosedForm.of(ONE=-4, PI=1, ...)"""
        return cls({BasisConstant[k]: v for k, v in coefficients.items()}, branch)

    # Mapping protocol

    def __getitem__(self, tag) -> Fraction:
        return self.coefficients.get(BasisConstant(tag), Fraction(0))

    def __contains__(self, tag) -> bool:
        return tag in self.coefficients

    def __iter__(self) -> Iterator[BasisConstant]:
        return iter(sorted(self.coefficients, key=list(BasisConstant).index))

    def __len__(self) -> int:
        return len(self.coefficients)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClosedForm):
            return NotImplemented
        return dict(self.coefficients) == dict(other.coefficients)

    def __hash__(self) -> int:
        return hash(frozenset(self.coefficients.items()))

    # Algebra

    def __add__(self, other: "ClosedForm") -> "ClosedForm":
        merged = dict(self.coefficients)
        for tag, value in other.coefficients.items():
            merged[tag] = merged.get(tag, Fraction(0)) + value
        return ClosedForm(merged, self.branch)

    def __neg__(self) -> "ClosedForm":
        return self.scale(-1)

    def __sub__(self, other: "ClosedForm") -> "ClosedForm":
        return self + (-other)

    def scale(self, factor) -> "ClosedForm":
        q = _as_fraction(factor)
        return ClosedForm({t: q * v for t, v in self.coefficients.items()}, self.branch)

    def __rmul__(self, factor) -> "ClosedForm":
        return self.scale(factor)

    def with_branch(self, branch: str) -> "ClosedForm":
        return ClosedForm(self.coefficients, branch)

    def support(self) -> frozenset[BasisConstant]:
        return frozenset(self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def evaluate(self) -> XReal:
        """Substitute the basis constants (error well below 1e-30)."""
        return CTX.fsum(to_xreal(v) * basis_value(t) for t, v in self.coefficients.items())

    def to_json(self) -> dict[str, str]:
        """Canonical {tag: "num/den"} object in basis order."""
        return {str(t): f"{self[t].numerator}/{self[t].denominator}" for t in self}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "ClosedForm":
        try:
            return cls({BasisConstant(k): Fraction(v) for k, v in data.items()})
        except (ValueError, ZeroDivisionError) as e:
            raise ClosedFormError(f"malformed closed form {data!r}") from e

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        return " + ".join(f"({self[t]})*{t}" for t in self)


ZERO = ClosedForm()
