"""Identity registry: every checkable identity with both sides and a tolerance class"""

import random
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction as F

from core.config import Config
from core.exceptions import RegistryCoverageError, RegistryError, UnknownIdentityError
from core.harness.types import Effort, Group, IdentityRecord, Measurement, ToleranceClass
from core.numerics import theorems
from core.numerics.auxiliary import AuxSeriesId, aux_series
from core.numerics.closedform import ClosedForm
from core.numerics.integrals import (
    CATALOG,
    COMBINATIONS,
    IntegralCache,
    IntegralId,
    LemmaIntegral,
    evaluate_combination,
    lemma_closed_value,
    lemma_integral,
)
from core.numerics.polylog import dilog, polylog, trilog, zeta3
from core.numerics.quadrature import MAX_LEVEL, integrate, integrate_gauss_legendre
from core.numerics.series import (
    DEFAULT_BUDGET,
    SeriesSpec,
    SignPattern,
    SumResult,
    TailClass,
    WeightKind,
    fourier_ln2cos_check,
    kernel_alt_sum,
    kernel_sum,
    stride_one_sum,
    sum_alternating,
    sum_em_tail,
    weighted_kernel_sum,
    weighted_stride_one_sum,
)
from core.numerics.specfun import (
    MAX_POLYGAMMA_ORDER,
    catalan,
    digamma,
    f_finite_value,
    f_psi,
    polygamma,
    zeta_int,
)
from core.numerics.xprec import CTX, XReal, const
from core.observability.logging_config import get_logger

logger = get_logger(__name__)

# Exact identities are cheap, so their grid does not follow the numeric one
EXACT_N_MAX = 10
EXACT_M_MAX = 3
CONJUGATION_SAMPLES = 50
CONJUGATION_SEED = 20240917
KERNEL_GRID_K = 500
KERNEL_GRID_N = 8
GAUSS_LEGENDRE_TOL = 1e-15
WEIGHTED_STRIDE_ONE_TOL = 1e-26


@dataclass(frozen=True)
class EvalContext:
    """Engine settings handed to both sides of an identity."""

    eps: XReal
    budget_terms: int = DEFAULT_BUDGET
    quad_level: int = MAX_LEVEL
    integrals: IntegralCache = field(default_factory=IntegralCache)


class Registry:
    """Ordered, id-unique collection of identity records."""

    def __init__(self, records: Iterable[IdentityRecord] = ()):
        self._records: dict[str, IdentityRecord] = {}
        for record in records:
            self.add(record)

    def add(self, record: IdentityRecord) -> None:
        if record.id in self._records:
            raise RegistryError(f"identity {record.id!r} registered twice")
        self._records[record.id] = record

    def __contains__(self, identity_id: str) -> bool:
        return identity_id in self._records

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[IdentityRecord]:
        return iter(self._records.values())

    def get(self, identity_id: str) -> IdentityRecord:
        try:
            return self._records[identity_id]
        except KeyError as e:
            raise UnknownIdentityError(f"unknown identity {identity_id!r}") from e

    def group(self, group: Group | str) -> list[IdentityRecord]:
        try:
            wanted = Group(group)
        except ValueError as e:
            raise UnknownIdentityError(f"unknown group {group!r}") from e
        return [r for r in self if r.group is wanted]

    def select(self, groups: Iterable[Group | str] = (), ids: Iterable[str] = ()) -> list[IdentityRecord]:
        """Records matching any requested group or id; everything when both are empty."""
        groups = [Group(g) for g in groups]
        ids = list(ids)
        if not groups and not ids:
            return list(self)
        chosen = {r.id: r for g in groups for r in self.group(g)}
        for identity_id in ids:
            chosen[identity_id] = self.get(identity_id)
        return sorted(chosen.values(), key=lambda r: r.id)

    def check_coverage(self, required: Iterable[str]) -> None:
        missing = [i for i in required if i not in self._records]
        if missing:
            raise RegistryCoverageError(f"registry is missing required identities: {missing}")


# Side builders


def _series(compute: Callable[[EvalContext], SumResult]) -> Callable[[EvalContext], Measurement]:
    def lhs(ctx: EvalContext) -> Measurement:
        result = compute(ctx)
        return Measurement(result.value, Effort(terms=result.terms_used))

    return lhs


def _value(compute: Callable[[EvalContext], object]) -> Callable[[EvalContext], Measurement]:
    return lambda ctx: Measurement(compute(ctx))


def _closed(form: ClosedForm) -> Callable[[EvalContext], ClosedForm]:
    return lambda _ctx: form


def _zero(_ctx: EvalContext) -> XReal:
    return CTX.zero


def _lazy_closed(build: Callable[[], ClosedForm]) -> Callable[[EvalContext], ClosedForm]:
    return lambda _ctx: build()


def _exact(build: Callable[[], ClosedForm]) -> Callable[[EvalContext], Measurement]:
    return lambda _ctx: Measurement(build())


def _max_residual(residuals: Iterable) -> XReal:
    return max((abs(r) for r in residuals), default=CTX.zero)


# Lemmas and special values


def _special_value_records() -> list[IdentityRecord]:
    pi, ln2 = const("pi"), const("ln2")
    one_plus_i = CTX.mpc(1, 1)
    one_minus_i = CTX.mpc(1, -1)
    specs = [
        ("li2_half", lambda c: dilog(CTX.mpf(0.5)).real,
         lambda c: pi**2 / 12 - ln2**2 / 2, "Li2(1/2) = pi^2/12 - ln^2(2)/2"),
        ("li3_half", lambda c: trilog(CTX.mpf(0.5)).real,
         lambda c: ln2**3 / 6 - pi**2 * ln2 / 12 + 7 * zeta3() / 8,
         "Li3(1/2) = ln^3(2)/6 - pi^2 ln(2)/12 + 7 zeta(3)/8"),
        ("li2_i", lambda c: dilog(CTX.mpc(0, 1)),
         lambda c: CTX.mpc(-pi**2 / 48, catalan()), "Li2(i) = -pi^2/48 + i G"),
        ("li3_i", lambda c: trilog(CTX.mpc(0, 1)),
         lambda c: CTX.mpc(-3 * zeta3() / 32, pi**3 / 32), "Li3(i) = -3 zeta(3)/32 + i pi^3/32"),
        ("li2_one_minus_i", lambda c: dilog(one_minus_i),
         lambda c: CTX.mpc(pi**2 / 16, -(pi * ln2 / 4 + catalan())),
         "Li2(1-i) = pi^2/16 - i (pi ln(2)/4 + G)"),
    ]
    records = [
        IdentityRecord(i, Group.LEMMAS, _value(lhs), rhs, ToleranceClass.LEMMA, anchor)
        for i, lhs, rhs, anchor in specs
    ]
    records.append(
        IdentityRecord(
            "li3_one_pm_i_sum", Group.LEMMAS,
            _value(lambda c: trilog(one_minus_i) + trilog(one_plus_i)),
            _closed(ClosedForm.of(PI2_LN2=F(1, 16), ZETA3=F(35, 32))),
            ToleranceClass.LEMMA, "Li3(1-i) + Li3(1+i) = pi^2 ln(2)/16 + 35 zeta(3)/32",
        )
    )
    real_part = ClosedForm.of(PI2_LN2=F(1, 32), ZETA3=F(35, 64))

    def worse_real_part(_ctx):
        target = real_part.evaluate()
        parts = (trilog(one_plus_i).real, trilog(one_minus_i).real)
        return max(parts, key=lambda v: abs(v - target))

    records.append(
        IdentityRecord(
            "li3_one_pm_i_real", Group.LEMMAS,
            _value(worse_real_part),
            _closed(real_part),
            ToleranceClass.LEMMA, "Re Li3(1+-i) = pi^2 ln(2)/32 + 35 zeta(3)/64",
        )
    )
    return records


def _functional_equation_records() -> list[IdentityRecord]:
    pi2_6 = const("pi") ** 2 / 6

    def reflection(_ctx):
        points = [CTX.mpf("0.3"), CTX.mpf("0.7"), CTX.mpc("0.25", "0.5"), CTX.mpc("0.6", "-0.3")]
        return _max_residual(
            dilog(z) + dilog(1 - z) - (pi2_6 - CTX.ln(z) * CTX.ln(1 - z)) for z in points
        )

    def landen(_ctx):
        points = [CTX.mpf("0.3"), CTX.mpf("-0.5"), CTX.mpf(-2), CTX.mpc("0.2", "0.4")]
        return _max_residual(
            dilog(z) + dilog(z / (z - 1)) + CTX.ln(1 - z) ** 2 / 2 for z in points
        )

    def three_term(_ctx):
        points = [CTX.mpf("0.3"), CTX.mpf("0.6"), CTX.mpc("0.25", "0.5"), CTX.mpc("0.5", "-0.4")]

        def rhs(z):
            l1 = CTX.ln(1 - z)
            return l1**2 * (l1 - 3 * CTX.ln(z)) / 6 + pi2_6 * l1 + zeta3()

        return _max_residual(
            trilog(z) + trilog(1 - z) + trilog(z / (z - 1)) - rhs(z) for z in points
        )

    def conjugation(_ctx):
        rng = random.Random(CONJUGATION_SEED)
        residuals = []
        while len(residuals) < 2 * CONJUGATION_SAMPLES:
            z = CTX.mpc(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if abs(z.imag) < 0.05:
                continue
            for s in (2, 3):
                residuals.append(polylog(s, CTX.conj(z)) - CTX.conj(polylog(s, z)))
        return _max_residual(residuals)

    return [
        IdentityRecord("li2_reflection", Group.LEMMAS, _value(reflection), _zero,
                       ToleranceClass.LEMMA, "Li2(z) + Li2(1-z) = pi^2/6 - ln(z) ln(1-z)"),
        IdentityRecord("li2_landen", Group.LEMMAS, _value(landen), _zero,
                       ToleranceClass.LEMMA, "Li2(z) + Li2(z/(z-1)) = -ln^2(1-z)/2"),
        IdentityRecord("li3_three_term", Group.LEMMAS, _value(three_term), _zero,
                       ToleranceClass.LEMMA,
                       "Li3(z) + Li3(1-z) + Li3(z/(z-1)) in logarithms, pi^2 and zeta(3)"),
        IdentityRecord("polylog_conjugation", Group.LEMMAS, _value(conjugation), _zero,
                       ToleranceClass.PROPERTY, "Li_s(conj z) = conj Li_s(z), s = 2, 3"),
    ]


_SAMPLE_LABELS = {"quarter": "0.25", "half": "0.5", "point9": "0.9", "one": "1"}


def _lemma_integral_records() -> list[IdentityRecord]:
    records = []
    plan = [
        ("log_log_integral", LemmaIntegral.LOG_LOG, ("quarter", "half", "one"),
         "int_0^z ln(t) ln(1-t)/t dt = Li3(z) - Li2(z) ln(z)"),
        ("log_sq_integral", LemmaIntegral.LOG1M_SQUARED, ("quarter", "half", "one"),
         "int_0^z ln^2(1-t)/t dt in Li2(1-z), Li3(1-z) and zeta(3)"),
        ("log_sq_1p_integral", LemmaIntegral.LOG1P_SQUARED, ("half", "one"),
         "int_0^z ln^2(1+t)/t dt in Li2(1/(1+z)), Li3(1/(1+z)) and zeta(3)"),
    ]
    for prefix, kind, labels, anchor in plan:
        for label in labels:
            z = CTX.mpf(_SAMPLE_LABELS[label])

            def lhs(ctx, kind=kind, z=z):
                result = lemma_integral(kind, z, ctx.eps, ctx.quad_level)
                return Measurement(result.value, Effort(levels=result.levels_used))

            records.append(
                IdentityRecord(
                    f"{prefix}_{label}", Group.LEMMAS, lhs,
                    lambda _ctx, kind=kind, z=z: lemma_closed_value(kind, z),
                    ToleranceClass.QUADRATURE, f"{anchor}, z = {_SAMPLE_LABELS[label]}",
                )
            )
    return records


def _harmonic_generating_closed(z):
    w = 1 - z
    lw = CTX.ln(w)
    return zeta3() + dilog(w) * lw - trilog(w) + CTX.ln(z) * lw**2 / 2


def _generating_records() -> list[IdentityRecord]:
    records = []
    for label in ("quarter", "half", "point9"):
        z = CTX.mpf(_SAMPLE_LABELS[label])
        records.append(
            IdentityRecord(
                f"harmonic_generating_{label}", Group.LEMMAS,
                _series(lambda ctx, z=z: aux_series(
                    AuxSeriesId.HARMONIC_GENERATING, ctx.eps, z=z, budget=ctx.budget_terms)),
                lambda _ctx, z=z: _harmonic_generating_closed(z).real,
                ToleranceClass.ALTERNATING,
                f"Sum H_k z^(k+1)/(k+1)^2 in Li2(1-z), Li3(1-z), z = {_SAMPLE_LABELS[label]}",
            )
        )
    records.append(
        IdentityRecord(
            "harmonic_generating_i", Group.LEMMAS,
            _series(lambda ctx: aux_series(
                AuxSeriesId.HARMONIC_GENERATING, ctx.eps, z=CTX.mpc(0, 1), budget=ctx.budget_terms)),
            lambda _ctx: _harmonic_generating_closed(CTX.mpc(0, 1)),
            ToleranceClass.ALTERNATING,
            "Sum H_k i^(k+1)/(k+1)^2, real and imaginary subseries",
        )
    )
    for label in ("quarter", "half"):
        z = CTX.mpf(_SAMPLE_LABELS[label])

        def rhs(ctx, z=z):
            kernel = lemma_integral(LemmaIntegral.TRIGAMMA_KERNEL, z, ctx.eps, ctx.quad_level)
            return -z * zeta_int(2) + trilog(z).real + kernel.value

        records.append(
            IdentityRecord(
                f"trigamma_generating_{label}", Group.LEMMAS,
                _series(lambda ctx, z=z: aux_series(
                    AuxSeriesId.TRIGAMMA_GENERATING, ctx.eps, z=z, budget=ctx.budget_terms)),
                rhs, ToleranceClass.QUADRATURE,
                "Sum psi_1(k+1) z^(k+1)/(k+1) = -z zeta(2) + Li3(z) + "
                f"int_0^1 ln(t) ln(1-zt)/(1-t) dt, z = {_SAMPLE_LABELS[label]}",
            )
        )
    return records


def _kernel_records() -> list[IdentityRecord]:
    def closed_form_residual(_ctx):
        return _max_residual(f_psi(k, 0) - f_finite_value(k, 0) for k in range(0, 201))

    def shift_residual(_ctx):
        return _max_residual(
            f_psi(k, n) - f_finite_value(k, n) for n in range(1, 9) for k in range(0, 61)
        )

    def fourier_residual(ctx):
        return _max_residual(
            fourier_ln2cos_check(CTX.mpf(z), 400, ctx.eps) for z in ("-0.6", "0.3", "1.0")
        )

    return [
        IdentityRecord("kernel_closed_form", Group.LEMMAS, _value(closed_form_residual), _zero,
                       ToleranceClass.PROPERTY,
                       "psi((2k+5)/4) - psi((2k+3)/4) = (-1)^(k-1) pi + 4 (-1)^k "
                       "Sum_{j<=k} (-1)^j/(2j+1), k <= 200"),
        IdentityRecord("kernel_shift", Group.LEMMAS, _value(shift_residual), _zero,
                       ToleranceClass.PROPERTY,
                       "f(k, n) from f(k, 0) through the odd and even shift equations, n <= 8"),
        IdentityRecord("ln2cos_fourier", Group.LEMMAS, _value(fourier_residual), _zero,
                       ToleranceClass.FOURIER,
                       "ln^2(2cos z) = z^2 + 2 Sum (-1)^(k-1) H_k cos(2(k+1)z)/(k+1)"),
    ]


def _elementary_series_records() -> list[IdentityRecord]:
    catalan_spec = SeriesSpec(
        name="catalan_series",
        term=lambda k: 1 / CTX.mpf(2 * k + 1) ** 2,
        sign_pattern=SignPattern.STRICTLY_ALTERNATING,
        tail_class=TailClass.ALTERNATING_DECREASING,
        start_index=0,
    )
    odd_square_spec = SeriesSpec(
        name="odd_square_series",
        term=lambda k: 1 / CTX.mpf(2 * k + 1) ** 2,
        sign_pattern=SignPattern.ALL_POSITIVE,
        tail_class=TailClass.SMOOTH_RATIONAL_DECAY,
        smooth=lambda x: 1 / (2 * x + 1) ** 2,
    )
    odd_cube_spec = SeriesSpec(
        name="odd_cube_alt_series",
        term=lambda k: 1 / CTX.mpf(2 * k + 1) ** 3,
        sign_pattern=SignPattern.STRICTLY_ALTERNATING,
        tail_class=TailClass.ALTERNATING_DECREASING,
        start_index=0,
    )
    return [
        IdentityRecord("catalan_series", Group.LEMMAS,
                       _series(lambda c: sum_alternating(catalan_spec, c.eps, c.budget_terms)),
                       _closed(ClosedForm.of(G=1)), ToleranceClass.ALTERNATING,
                       "Sum_{k>=0} (-1)^k/(2k+1)^2 = G"),
        IdentityRecord("odd_square_series", Group.LEMMAS,
                       _series(lambda c: sum_em_tail(odd_square_spec, c.eps, c.budget_terms)),
                       _closed(ClosedForm.of(PI2=F(1, 8), ONE=-1)), ToleranceClass.POSITIVE,
                       "Sum_{k>=1} 1/(2k+1)^2 = pi^2/8 - 1"),
        IdentityRecord("odd_cube_alt_series", Group.LEMMAS,
                       _series(lambda c: sum_alternating(odd_cube_spec, c.eps, c.budget_terms)),
                       _closed(ClosedForm.of(PI3=F(1, 32))), ToleranceClass.ALTERNATING,
                       "Sum_{k>=0} (-1)^k/(2k+1)^3 = pi^3/32"),
    ]


# Kernel-sum theorems


def _theorem_records(config: Config) -> list[IdentityRecord]:
    records = []
    families = [
        ("kernel_sum_odd", Group.THEOREMS_ODD, kernel_sum, theorems.kernel_sum_odd_rhs,
         lambda m: 2 * m + 1, ToleranceClass.POSITIVE, "Sum f(k,n)/(2k+2m+1)^2"),
        ("kernel_alt_sum_odd", Group.THEOREMS_ODD, kernel_alt_sum, theorems.kernel_alt_sum_odd_rhs,
         lambda m: 2 * m + 1, ToleranceClass.ALTERNATING, "Sum (-1)^k f(k,n)/(2k+2m+1)^2"),
        ("kernel_sum_even", Group.THEOREMS_EVEN, kernel_sum, theorems.kernel_sum_even_rhs,
         lambda m: 2 * m, ToleranceClass.POSITIVE, "Sum f(k,n)/(2k+2m)^2"),
        ("kernel_alt_sum_even", Group.THEOREMS_EVEN, kernel_alt_sum,
         theorems.kernel_alt_sum_even_rhs, lambda m: 2 * m, ToleranceClass.ALTERNATING,
         "Sum (-1)^k f(k,n)/(2k+2m)^2"),
    ]
    for prefix, group, engine, builder, alpha_of, tol_class, anchor in families:
        for m in range(0, config.m_max + 1):
            for n in range(m, config.n_max + 1):
                alpha = alpha_of(m)
                records.append(
                    IdentityRecord(
                        f"{prefix}_n{n}_m{m}", group,
                        _series(lambda c, n=n, a=alpha, e=engine: e(
                            n, a, c.eps, budget=c.budget_terms)),
                        _lazy_closed(lambda n=n, m=m, b=builder: b(n, m)),
                        tol_class, f"{anchor} closed form, n = {n}, m = {m}",
                    )
                )
    return records


def _weighted_grid(n_max: int, m_max: int) -> Iterator[tuple[WeightKind, int, int]]:
    for m in range(0, m_max + 1):
        for n in range(2 * m, n_max + 1):
            yield WeightKind.HALF_MINUS, n, m
    for m in range(1, m_max + 1):
        for n in range(2 * m - 1, n_max + 1):
            yield WeightKind.HALF_PLUS, n, m


def _weighted_from_even(n: int, m: int, weight: WeightKind) -> ClosedForm:
    if weight is WeightKind.HALF_MINUS:
        shift, sign = 2 * m, -1
    else:
        shift, sign = 2 * m - 1, 1
    plain = theorems.kernel_sum_even_rhs(n, shift)
    alternating = theorems.kernel_alt_sum_even_rhs(n, shift)
    return F(1, 2) * plain + sign * alternating


WEIGHTED_EXAMPLES: dict[tuple[WeightKind, int, int], ClosedForm] = {
    (WeightKind.HALF_MINUS, 2, 0): ClosedForm.of(
        ONE=F(8804, 3375), PI=F(-259, 225), PI2=F(13, 90), PI3=F(-1, 96)),
    (WeightKind.HALF_MINUS, 3, 0): ClosedForm.of(
        ONE=F(-3167372, 1157625), PI=F(12916, 11025), PI2=F(-38, 315), PI3=F(1, 96)),
    (WeightKind.HALF_MINUS, 4, 0): ClosedForm.of(
        ONE=F(85428394, 31255875), PI=F(-117469, 99225), PI2=F(263, 1890), PI3=F(-1, 96)),
    (WeightKind.HALF_MINUS, 6, 3): ClosedForm.of(
        ONE=F(1073869873, 324324000), PI=F(-42457, 28800), PI2=F(1, 6), PI3=F(-1, 96)),
    (WeightKind.HALF_MINUS, 7, 3): ClosedForm.of(
        ONE=F(-681924389, 162162000), PI=F(5073, 3200), PI2=F(-1, 9), PI3=F(1, 96)),
    (WeightKind.HALF_MINUS, 6, 2): ClosedForm.of(
        ONE=F(6775331, 1716000), PI=F(-46277, 28800), PI2=F(13, 90), PI3=F(-1, 96)),
    (WeightKind.HALF_MINUS, 7, 2): ClosedForm.of(
        ONE=F(-78022319, 18393375), PI=F(2296373, 1411200), PI2=F(-38, 315), PI3=F(1, 96)),
    (WeightKind.HALF_PLUS, 1, 1): ClosedForm.of(
        ONE=3, PI=F(-11, 8), PI2=F(1, 6), PI3=F(-1, 96)),
    (WeightKind.HALF_PLUS, 2, 1): ClosedForm.of(
        ONE=F(-1051, 270), PI=F(107, 72), PI2=F(-1, 9), PI3=F(1, 96)),
    (WeightKind.HALF_PLUS, 4, 1): ClosedForm.of(
        ONE=F(-9234319, 2315250), PI=F(136403, 88200), PI2=F(-38, 315), PI3=F(1, 96)),
    (WeightKind.HALF_PLUS, 5, 1): ClosedForm.of(
        ONE=F(1323415409, 343814625), PI=F(-1237427, 793800), PI2=F(263, 1890), PI3=F(-1, 96)),
}

WEIGHTED_STRIDE_ONE_EXAMPLES: dict[int, ClosedForm] = {
    2: ClosedForm.of(ONE=F(5819, 3375), LN2=F(418, 225), PI2=F(-91, 180), PI3=F(5, 96)),
    3: ClosedForm.of(ONE=F(-1830092, 1157625), LN2=F(-20032, 11025), PI2=F(19, 45), PI3=F(-5, 96)),
}


def _weighted_records(config: Config) -> list[IdentityRecord]:
    records = []
    for weight, n, m in _weighted_grid(config.n_max, config.m_max):
        records.append(
            IdentityRecord(
                f"weighted_{weight}_n{n}_m{m}", Group.THEOREMS_WEIGHTED,
                _series(lambda c, n=n, m=m, w=weight: weighted_kernel_sum(
                    n, m, w, c.eps, budget=c.budget_terms)),
                _lazy_closed(lambda n=n, m=m, w=weight: theorems.weighted_rhs(n, m, w)),
                ToleranceClass.WEIGHTED,
                f"Sum (1/2 {'-' if weight is WeightKind.HALF_MINUS else '+'} (-1)^k) f(k,n)/"
                f"(2k+alpha)^2 in 1, pi, pi^2, pi^3, n = {n}, m = {m}",
            )
        )
    for weight, n, m in _weighted_grid(EXACT_N_MAX, EXACT_M_MAX):
        records.append(
            IdentityRecord(
                f"weighted_derivation_{weight}_n{n}_m{m}", Group.THEOREMS_WEIGHTED,
                _exact(lambda n=n, m=m, w=weight: _weighted_from_even(n, m, w)),
                _lazy_closed(lambda n=n, m=m, w=weight: theorems.weighted_rhs(n, m, w)),
                ToleranceClass.EXACT,
                f"weighted closed form equals half the plain even form "
                f"{'minus' if weight is WeightKind.HALF_MINUS else 'plus'} the alternating one, "
                f"n = {n}, m = {m}",
            )
        )
    for (weight, n, m), expected in WEIGHTED_EXAMPLES.items():
        records.append(
            IdentityRecord(
                f"weighted_example_{weight}_n{n}_m{m}", Group.THEOREMS_WEIGHTED,
                _exact(lambda n=n, m=m, w=weight: theorems.weighted_rhs(n, m, w)),
                _closed(expected), ToleranceClass.EXACT,
                f"worked rational example, n = {n}, m = {m}: {expected}",
            )
        )
    return records


def _stride_one_records(config: Config) -> list[IdentityRecord]:
    records = []
    for n in range(0, config.n_max + 1):
        records.append(
            IdentityRecord(
                f"stride_one_n{n}", Group.STRIDE_ONE,
                _series(lambda c, n=n: stride_one_sum(n, c.eps, budget=c.budget_terms)),
                _lazy_closed(lambda n=n: theorems.stride_one_rhs(n)),
                ToleranceClass.POSITIVE,
                f"Sum [psi((k+2n+5)/4) - psi((k+2n+3)/4)]/k^2 closed form, n = {n}",
            )
        )
        records.append(
            IdentityRecord(
                f"weighted_stride_one_n{n}", Group.STRIDE_ONE,
                _series(lambda c, n=n: weighted_stride_one_sum(n, c.eps, budget=c.budget_terms)),
                _lazy_closed(lambda n=n: theorems.weighted_stride_one_rhs(n)),
                ToleranceClass.POSITIVE,
                f"half the alpha = 0 kernel sum minus the stride-one sum in 1, ln 2, pi^2, pi^3, "
                f"n = {n}",
                tol=WEIGHTED_STRIDE_ONE_TOL,
            )
        )
    for n in range(0, EXACT_N_MAX + 1):
        records.append(
            IdentityRecord(
                f"stride_one_derivation_n{n}", Group.STRIDE_ONE,
                _exact(lambda n=n: F(1, 2) * theorems.kernel_sum_even_rhs(n, 0)
                       - theorems.stride_one_rhs(n)),
                _lazy_closed(lambda n=n: theorems.weighted_stride_one_rhs(n)),
                ToleranceClass.EXACT,
                f"stride-one weighted form equals half the even form minus the stride-one form, "
                f"n = {n}",
            )
        )
    for n, expected in WEIGHTED_STRIDE_ONE_EXAMPLES.items():
        records.append(
            IdentityRecord(
                f"weighted_stride_one_example_n{n}", Group.STRIDE_ONE,
                _exact(lambda n=n: theorems.weighted_stride_one_rhs(n)),
                _closed(expected), ToleranceClass.EXACT,
                f"worked rational example, n = {n}: {expected}",
            )
        )
    return records


# Auxiliary sums

AUX_CLOSED_FORMS: dict[AuxSeriesId, tuple[ClosedForm, str]] = {
    AuxSeriesId.ALT_NESTED_ODD: (
        ClosedForm.of(G=1, PI2_LN2=F(-1, 16), ZETA3=F(-7, 16)),
        "Sum (-1)^k/(2k+1)^2 Sum_{j<=k} (-1)^(j-1)/(2j+1) = G - pi^2 ln(2)/16 - 7 zeta(3)/16",
    ),
    AuxSeriesId.KERNEL_SUM_ODD_ZERO: (
        ClosedForm.of(PI2_LN2=F(1, 4), ZETA3=F(7, 4), PI=1, G_PI=-1, ONE=-4),
        "Sum f(k,0)/(2k+1)^2 = pi^2 ln(2)/4 + 7 zeta(3)/4 + (1 - G) pi - 4",
    ),
    AuxSeriesId.ALT_H2K: (
        ClosedForm.of(IM_LI3=1, G_LN2=F(-1, 2), PI3=F(-1, 32), PI_LN2SQ=F(-1, 16)),
        "Sum (-1)^k H_2k/(2k+1)^2 = Im Li3(1+i) - G ln(2)/2 - pi^3/32 - pi ln^2(2)/16",
    ),
    AuxSeriesId.ALT_HK: (
        ClosedForm.of(IM_LI3=-2, G_LN2=-1, PI3=F(3, 32), PI_LN2SQ=F(1, 8)),
        "Sum (-1)^k H_k/(2k+1)^2 = -2 Im Li3(1+i) - G ln(2) + 3 pi^3/32 + pi ln^2(2)/8",
    ),
    AuxSeriesId.ALT_HK_PLUS_2H2K: (
        ClosedForm.of(G_LN2=-2, PI3=F(1, 32)),
        "Sum (-1)^k (H_k + 2 H_2k)/(2k+1)^2 = -2 G ln(2) + pi^3/32",
    ),
    AuxSeriesId.ALT_H2K_MINUS_HK: (
        ClosedForm.of(IM_LI3=3, G_LN2=F(1, 2), PI3=F(-1, 8), PI_LN2SQ=F(-3, 16)),
        "Sum (-1)^k (H_2k - H_k)/(2k+1)^2 = 3 Im Li3(1+i) + G ln(2)/2 - pi^3/8 "
        "- 3 pi ln^2(2)/16",
    ),
    AuxSeriesId.ALT_H2K1_MINUS_HK: (
        ClosedForm.of(IM_LI3=3, G_LN2=F(1, 2), PI3=F(-3, 32), ONE=-1, PI_LN2SQ=F(-3, 16)),
        "Sum_{k>=1} (-1)^k (H_2k+1 - H_k)/(2k+1)^2 = 3 Im Li3(1+i) + G ln(2)/2 - 3 pi^3/32 "
        "- 1 - 3 pi ln^2(2)/16",
    ),
    AuxSeriesId.ALT_H2K1: (
        ClosedForm.of(IM_LI3=1, G_LN2=F(-1, 2), PI_LN2SQ=F(-1, 16)),
        "Sum_{k>=0} (-1)^k H_2k+1/(2k+1)^2 = Im Li3(1+i) - G ln(2)/2 - pi ln^2(2)/16",
    ),
    AuxSeriesId.STRIDE_ONE_ZERO: (
        ClosedForm.of(ONE=-4, PI2=F(2, 3), PI3=F(-1, 6), G_LN2=-2, PI_LN2SQ=F(-1, 4), IM_LI3=4),
        "Sum [psi((k+5)/4) - psi((k+3)/4)]/k^2 = -4 + 2 pi^2/3 - pi^3/6 - 2 G ln(2) "
        "- pi ln^2(2)/4 + 4 Im Li3(1+i)",
    ),
    AuxSeriesId.PSI1_OVER_K: (
        ClosedForm.of(ZETA3=2, PI2=F(-1, 6)),
        "Sum psi_1(k+1)/(k+1) = 2 zeta(3) - zeta(2)",
    ),
}


def _aux_records() -> list[IdentityRecord]:
    records = []
    for series_id, (form, anchor) in AUX_CLOSED_FORMS.items():
        tol_class = (
            ToleranceClass.POSITIVE
            if series_id in {AuxSeriesId.KERNEL_SUM_ODD_ZERO, AuxSeriesId.STRIDE_ONE_ZERO,
                             AuxSeriesId.PSI1_OVER_K}
            else ToleranceClass.ALTERNATING
        )
        records.append(
            IdentityRecord(
                str(series_id), Group.AUX_SERIES,
                _series(lambda c, s=series_id: aux_series(s, c.eps, budget=c.budget_terms)),
                _closed(form), tol_class, anchor,
            )
        )

    g_ln2 = lambda: catalan() * const("ln2")  # noqa: E731
    pi_ln2sq = lambda: const("pi") * const("ln2") ** 2  # noqa: E731

    def from_odd_harmonic(c):
        r = aux_series(AuxSeriesId.ALT_H2K1, c.eps, budget=c.budget_terms)
        return Measurement(g_ln2() / 2 + pi_ln2sq() / 16 + r.value, Effort(terms=r.terms_used))

    def from_harmonic(c):
        r = aux_series(AuxSeriesId.ALT_HK, c.eps, budget=c.budget_terms)
        value = -g_ln2() / 2 + 3 * const("pi") ** 3 / 64 + pi_ln2sq() / 16 - r.value / 2
        return Measurement(value, Effort(terms=r.terms_used))

    records += [
        IdentityRecord("im_li3_series_1", Group.AUX_SERIES, from_odd_harmonic,
                       _closed(ClosedForm.of(IM_LI3=1)), ToleranceClass.ALTERNATING,
                       "Im Li3(1+i) = G ln(2)/2 + pi ln^2(2)/16 + "
                       "Sum_{k>=0} (-1)^k H_2k+1/(2k+1)^2"),
        IdentityRecord("im_li3_series_2", Group.AUX_SERIES, from_harmonic,
                       _closed(ClosedForm.of(IM_LI3=1)), ToleranceClass.ALTERNATING,
                       "Im Li3(1+i) = -G ln(2)/2 + 3 pi^3/64 + pi ln^2(2)/16 - "
                       "(1/2) Sum (-1)^k H_k/(2k+1)^2"),
    ]
    return records


# Integrals


def _integral_measure(ctx: EvalContext, integral_id: IntegralId) -> Measurement:
    result = ctx.integrals.get(integral_id, ctx.eps, ctx.quad_level)
    return Measurement(result.value, Effort(levels=result.levels_used))


def _integral_records() -> list[IdentityRecord]:
    records = []
    for integral_id, entry in CATALOG.items():
        records.append(
            IdentityRecord(
                f"integral_{integral_id}", Group.INTEGRALS_CLASSIC,
                lambda c, i=integral_id: _integral_measure(c, i),
                _closed(entry.closed_form), ToleranceClass.QUADRATURE,
                f"{entry.spec.description} = {entry.closed_form}",
            )
        )
    for combo in COMBINATIONS.values():
        group = (
            Group.INTEGRALS_NEW if combo.id.startswith("quad_relation") else Group.INTEGRALS_CLASSIC
        )
        tol_class = (
            ToleranceClass.QUADRATURE if combo.id.startswith("quad_combo")
            else ToleranceClass.NEW_INTEGRALS
        )
        terms = " ".join(f"{'+' if c > 0 else '-'} {abs(c)} [{i}]" for c, i in combo.terms)

        def lhs(c, combo=combo):
            value, levels = evaluate_combination(combo, c.eps, c.integrals, c.quad_level)
            return Measurement(value, Effort(levels=levels))

        records.append(
            IdentityRecord(
                combo.id, group, lhs, _closed(combo.closed_form), tol_class,
                f"{'cube root of ' if combo.cube_root else ''}{terms} = {combo.closed_form}",
            )
        )

    def kernel_with_integral(c, plain: bool):
        # 4 x (alpha = 0 kernel sum) + 8 x (companion integral)
        if plain:
            series = kernel_sum(0, 0, c.eps / 8, budget=c.budget_terms)
            integral = c.integrals.get(IntegralId.ATAN_LOG1M_SQ, c.eps / 16, c.quad_level)
        else:
            series = kernel_alt_sum(0, 0, c.eps / 8, budget=c.budget_terms)
            integral = c.integrals.get(IntegralId.ATAN_LOG1P_SQ, c.eps / 16, c.quad_level)
        return Measurement(
            4 * series.value + 8 * integral.value,
            Effort(terms=series.terms_used, levels=integral.levels_used),
        )

    records += [
        IdentityRecord(
            "kernel_sum_integral_relation", Group.INTEGRALS_NEW,
            lambda c: kernel_with_integral(c, True),
            _closed(ClosedForm.of(PI2=F(2, 3), LN2=16, ONE=-16, PI3=F(-1, 6))),
            ToleranceClass.NEW_INTEGRALS,
            "4 Sum f(k,0)/(2k)^2 + 8 int_0^1 arctan(x) ln(1-x^2)/x dx "
            "= 2 pi^2/3 + 16 ln(2) - 16 - pi^3/6",
        ),
        IdentityRecord(
            "kernel_alt_sum_integral_relation", Group.INTEGRALS_NEW,
            lambda c: kernel_with_integral(c, False),
            _closed(ClosedForm.of(ONE=-16, PI=4, LN2=8, PI2=F(-1, 3), PI3=F(1, 12))),
            ToleranceClass.NEW_INTEGRALS,
            "4 Sum (-1)^k f(k,0)/(2k)^2 + 8 int_0^1 arctan(x) ln(1+x^2)/x dx "
            "= -16 + 4 pi + 8 ln(2) - pi^2/3 + pi^3/12",
        ),
    ]
    return records


# Properties


REFLECTION_GRID = tuple(CTX.mpf(k) / 8 for k in (1, 2, 3, 5, 7))


def _cot_derivative_poly(order: int) -> list[int]:
    """Q_n with d^n/dx^n cot(pi x) = (-pi)^n Q_n(cot(pi x)).

    Q_0 = u and Q_{n+1} = (1 + u^2) Q_n'(u), from d/dx cot(pi x) = -pi (1 + cot^2).
    """
    q = [0, 1]
    for _ in range(order):
        dq = [i * c for i, c in enumerate(q)][1:] or [0]
        q = [0] * (len(dq) + 2)
        for i, c in enumerate(dq):
            q[i] += c
            q[i + 2] += c
    return q


def _digamma_records() -> list[IdentityRecord]:
    def recurrence(_ctx):
        grid = ["0.1", "0.5", "1.3", "2.75", "10.2", "37.5"]
        return _max_residual(
            digamma(CTX.mpf(x) + 1) - digamma(CTX.mpf(x)) - 1 / CTX.mpf(x) for x in grid
        )

    def duplication(_ctx):
        # 20 points from 1/16 to 25, both sides of the recurrence shift
        grid = [CTX.mpf(k * k) / 16 for k in range(1, 21)]
        return _max_residual(
            digamma(z + 0.5) - 2 * digamma(2 * z) + digamma(z) + CTX.ln(4) for z in grid
        )

    def reflection(_ctx):
        grid = ["0.1", "0.3", "0.45", "0.7"]
        pi = const("pi")
        return _max_residual(
            digamma(1 - CTX.mpf(x)) - digamma(CTX.mpf(x)) - pi * CTX.cot(pi * CTX.mpf(x))
            for x in grid
        )

    def polygamma_reflection(_ctx):
        pi = const("pi")
        residuals = []
        for order in range(1, MAX_POLYGAMMA_ORDER + 1):
            q = _cot_derivative_poly(order)
            for x in REFLECTION_GRID:
                u = CTX.cot(pi * x)
                rhs = pi ** (order + 1) * CTX.fsum(c * u**i for i, c in enumerate(q))
                lhs = polygamma(order, 1 - x) + (-1) ** (order + 1) * polygamma(order, x)
                residuals.append((lhs - rhs) / max(CTX.one, abs(rhs)))
        return _max_residual(residuals)

    def kernel_grid(_ctx):
        return _max_residual(
            f_psi(k, n) - f_finite_value(k, n)
            for n in range(0, KERNEL_GRID_N + 1)
            for k in range(0, KERNEL_GRID_K + 1)
        )

    return [
        IdentityRecord("digamma_recurrence", Group.PROPERTIES, _value(recurrence), _zero,
                       ToleranceClass.PROPERTY, "psi(x+1) = psi(x) + 1/x"),
        IdentityRecord("digamma_duplication", Group.PROPERTIES, _value(duplication), _zero,
                       ToleranceClass.PROPERTY, "psi(z+1/2) = 2 psi(2z) - psi(z) - ln 4"),
        IdentityRecord("digamma_reflection", Group.PROPERTIES, _value(reflection), _zero,
                       ToleranceClass.PROPERTY, "psi(1-x) - psi(x) = pi cot(pi x)"),
        IdentityRecord("polygamma_reflection", Group.PROPERTIES, _value(polygamma_reflection),
                       _zero, ToleranceClass.PROPERTY,
                       "psi_n(1-x) + (-1)^(n+1) psi_n(x) = (-1)^n pi d^n/dx^n cot(pi x), "
                       "n = 1..4, relative"),
        IdentityRecord("kernel_psi_vs_finite", Group.PROPERTIES, _value(kernel_grid), _zero,
                       ToleranceClass.PROPERTY,
                       f"f(k, n) by digamma equals its finite form, k <= {KERNEL_GRID_K}, "
                       f"n <= {KERNEL_GRID_N}"),
    ]


_SPLIT_INTEGRALS = (
    IntegralId.ATAN_LOG1P_SQ,
    IntegralId.ATAN_LOG1M,
    IntegralId.LOG_LOG1P_SQ,
    IntegralId.LOG1M_LOG1P,
    IntegralId.LOG_COS,
)

_GAUSS_LEGENDRE_INTEGRALS = (
    IntegralId.ATAN_LOG1P_SQ,
    IntegralId.LOG_LOG1P_SQ,
    IntegralId.LOG1M_LOG1P,
)


def _quadrature_property_records() -> list[IdentityRecord]:
    def split(ctx):
        residuals = []
        for integral_id in _SPLIT_INTEGRALS:
            spec = CATALOG[integral_id].spec
            middle = (spec.a + spec.b) / 2
            whole = integrate(spec, ctx.eps, ctx.quad_level).value
            left = integrate(spec, ctx.eps, ctx.quad_level, interval=(spec.a, middle)).value
            right = integrate(spec, ctx.eps, ctx.quad_level, interval=(middle, spec.b)).value
            residuals.append(whole - left - right)
        return _max_residual(residuals)

    def level_increases(ctx):
        increases = 0
        for integral_id in CATALOG:
            history = ctx.integrals.get(integral_id, ctx.eps, ctx.quad_level).history
            deltas = [delta for _, _, delta in history[1:]]
            # changes below eps are rounding noise
            increases += sum(1 for a, b in zip(deltas, deltas[1:]) if b > a and b > ctx.eps)
        return CTX.mpf(increases)

    def gauss_legendre(ctx):
        residuals = []
        for integral_id in _GAUSS_LEGENDRE_INTEGRALS:
            tanh_sinh = ctx.integrals.get(integral_id, ctx.eps, ctx.quad_level).value
            reference = integrate_gauss_legendre(CATALOG[integral_id].spec).value
            residuals.append(tanh_sinh - reference)
        return _max_residual(residuals)

    return [
        IdentityRecord("quadrature_split_interval", Group.PROPERTIES, _value(split), _zero,
                       ToleranceClass.QUADRATURE,
                       "int_a^b = int_a^mid + int_mid^b for five catalogue integrands"),
        IdentityRecord("quadrature_level_monotone", Group.PROPERTIES, _value(level_increases),
                       _zero, ToleranceClass.PROPERTY,
                       "level-to-level changes never grow for catalogue integrands"),
        IdentityRecord("quadrature_gauss_legendre", Group.PROPERTIES, _value(gauss_legendre),
                       _zero, ToleranceClass.QUADRATURE,
                       "tanh-sinh agrees with graded composite Gauss-Legendre "
                       "plus endpoint remainders",
                       tol=GAUSS_LEGENDRE_TOL),
    ]


def _bracketing_record() -> IdentityRecord:
    def outside(ctx):
        worst = CTX.zero
        for n in range(0, 4):
            result = kernel_alt_sum(n, 1, ctx.eps, budget=ctx.budget_terms)
            if result.bracket is None:
                continue
            low, high = result.bracket
            worst = max(worst, low - result.value, result.value - high, CTX.zero)
        return worst

    return IdentityRecord(
        "alternating_bracketing", Group.PROPERTIES, _value(outside), _zero,
        ToleranceClass.ALTERNATING,
        "accelerated alternating kernel sums lie between consecutive partial sums",
    )


def _duality_records() -> list[IdentityRecord]:
    pi, ln2 = const("pi"), const("ln2")

    def q(ctx, integral_id):
        return _integral_measure(ctx, integral_id)

    def alt_kernel_from_zero(ctx):
        # k = 0 term f(0, 0) = 4 - pi
        r = kernel_alt_sum(0, 1, ctx.eps, budget=ctx.budget_terms)
        return catalan() * ln2 - (4 - pi + r.value) / 2

    def alt_kernel_from_one(ctx):
        r = kernel_alt_sum(0, 1, ctx.eps, budget=ctx.budget_terms)
        return catalan() * ln2 - 2 + pi / 2 - r.value / 2

    def odd_harmonic(ctx):
        r = aux_series(AuxSeriesId.ALT_H2K1_MINUS_HK, ctx.eps, budget=ctx.budget_terms)
        return 2 * catalan() * ln2 - 1 - r.value

    def stride_one(ctx):
        r = stride_one_sum(0, ctx.eps, budget=ctx.budget_terms)
        return -1 + pi**2 / 6 - pi**3 / 24 - r.value / 4

    def harmonic(ctx):
        return aux_series(AuxSeriesId.ALT_HK, ctx.eps, budget=ctx.budget_terms).value

    plan = [
        ("series_quadrature_duality_1", IntegralId.ATAN_LOG1P_SQ, alt_kernel_from_zero,
         "int arctan(x) ln(1+x^2)/x = G ln 2 - (1/2) Sum_{k>=0} (-1)^k f(k,0)/(2k+1)^2"),
        ("series_quadrature_duality_2", IntegralId.ATAN_LOG1P_SQ, alt_kernel_from_one,
         "int arctan(x) ln(1+x^2)/x = G ln 2 - 2 + pi/2 - (1/2) Sum_{k>=1} (-1)^k f(k,0)/(2k+1)^2"),
        ("series_quadrature_duality_3", IntegralId.ATAN_LOG1P, odd_harmonic,
         "int arctan(x) ln(1+x)/x = 2 G ln 2 - 1 - Sum (-1)^k (H_2k+1 - H_k)/(2k+1)^2"),
        ("series_quadrature_duality_4", IntegralId.ATAN_LOG1M, stride_one,
         "int arctan(x) ln(1-x)/x = -1 + pi^2/6 - pi^3/24 - (1/4) Sum [psi((k+5)/4) - "
         "psi((k+3)/4)]/k^2"),
        ("series_quadrature_duality_5", IntegralId.LOG_LOG1P_SQ, harmonic,
         "int ln(x) ln(1+x^2)/(1+x^2) = Sum (-1)^k H_k/(2k+1)^2"),
    ]
    return [
        IdentityRecord(identity_id, Group.PROPERTIES, lambda c, i=integral_id: q(c, i), rhs,
                       ToleranceClass.POSITIVE, anchor)
        for identity_id, integral_id, rhs, anchor in plan
    ]


# Coverage

REQUIRED_IDS: tuple[str, ...] = (
    # special values and lemmas
    "li2_reflection", "li2_landen", "log_log_integral_half", "log_sq_integral_half",
    "li3_three_term", "log_sq_1p_integral_one", "harmonic_generating_half",
    "trigamma_generating_half", "polylog_conjugation", "ln2cos_fourier",
    "kernel_closed_form", "kernel_shift", "li2_half", "li3_half", "li2_i", "li3_i",
    "li2_one_minus_i", "li3_one_pm_i_sum", "li3_one_pm_i_real",
    # kernel-sum families
    "kernel_sum_odd_n0_m0", "kernel_alt_sum_odd_n0_m0", "kernel_alt_sum_odd_n2_m0",
    "kernel_sum_odd_n1_m1", "kernel_alt_sum_odd_n1_m1",
    "kernel_sum_even_n0_m0", "kernel_sum_even_n1_m1",
    "kernel_alt_sum_even_n0_m0", "kernel_alt_sum_even_n1_m1",
    "weighted_half_minus_n0_m0", "weighted_half_minus_n2_m1", "weighted_half_plus_n1_m1",
    "weighted_stride_one_n0", "stride_one_n0",
    # auxiliary sums
    "alt_nested_odd", "kernel_sum_odd_zero", "alt_h2k", "alt_hk", "alt_hk_plus_2h2k",
    "alt_h2k_minus_hk", "alt_h2k1_minus_hk", "alt_h2k1", "stride_one_zero", "psi1_over_k",
    "im_li3_series_1", "im_li3_series_2",
    # integrals
    "quad_combo_1", "quad_combo_2", "quad_combo_3", "quad_combo_4",
    *(f"quad_relation_{i}" for i in range(1, 14)),
    "pi_cube_1", "pi_cube_2",
)


def build_registry(config: Config | None = None) -> Registry:
    """Build every identity for the grid extents in ``config``.

    Raises:
        RegistryCoverageError: A required identity is missing
    """
    config = config or Config()
    registry = Registry()
    builders = [
        _special_value_records(),
        _functional_equation_records(),
        _lemma_integral_records(),
        _generating_records(),
        _kernel_records(),
        _elementary_series_records(),
        _theorem_records(config),
        _weighted_records(config),
        _stride_one_records(config),
        _aux_records(),
        _integral_records(),
        _digamma_records(),
        _quadrature_property_records(),
        [_bracketing_record()],
        _duality_records(),
    ]
    for records in builders:
        for record in records:
            registry.add(record)
    registry.check_coverage(REQUIRED_IDS)
    logger.debug(f"Registry built with {len(registry)} identities")
    return registry

