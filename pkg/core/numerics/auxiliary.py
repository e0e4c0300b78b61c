"""Auxiliary harmonic and polygamma sums used while deriving the kernel closed forms."""

from collections.abc import Callable
from enum import StrEnum
from fractions import Fraction

from core.exceptions import SeriesError
from core.numerics.series import (
    DEFAULT_BUDGET,
    SeriesSpec,
    SignPattern,
    SumMethod,
    SumResult,
    TailClass,
    combine,
    kernel_sum,
    stride_one_sum,
    sum_alternating,
    sum_direct,
    sum_em_tail,
)
from core.numerics.specfun import harmonic, kernel_psi_real, polygamma
from core.numerics.xprec import CTX, XReal, const, to_xreal, xreal
from core.observability.logging_config import get_logger

logger = get_logger(__name__)


class AuxSeriesId(StrEnum):
    PSI1_OVER_K = "psi1_over_k"
    ALT_H2K = "alt_h2k"
    ALT_HK = "alt_hk"
    ALT_HK_PLUS_2H2K = "alt_hk_plus_2h2k"
    ALT_NESTED_ODD = "alt_nested_odd"
    KERNEL_SUM_ODD_ZERO = "kernel_sum_odd_zero"
    ALT_H2K_MINUS_HK = "alt_h2k_minus_hk"
    ALT_H2K1_MINUS_HK = "alt_h2k1_minus_hk"
    ALT_H2K1 = "alt_h2k1"
    STRIDE_ONE_ZERO = "stride_one_zero"
    HARMONIC_GENERATING = "harmonic_generating"
    TRIGAMMA_GENERATING = "trigamma_generating"


PARAMETRIC = frozenset({AuxSeriesId.HARMONIC_GENERATING, AuxSeriesId.TRIGAMMA_GENERATING})


def _alternating(name: str, magnitude, start: int = 1) -> SeriesSpec:
    return SeriesSpec(
        name=name,
        term=magnitude,
        sign_pattern=SignPattern.STRICTLY_ALTERNATING,
        tail_class=TailClass.ALTERNATING_DECREASING,
        start_index=start,
    )


def _harmonic_over_odd_square(index: Callable[[int], Fraction]) -> Callable[[int], XReal]:
    def term(k: int) -> XReal:
        return to_xreal(index(k)) / CTX.mpf(2 * k + 1) ** 2

    return term


def _psi1_over_k(eps, budget: int) -> SumResult:
    # Sum_{k>=1} psi_1(k+1) / (k+1)
    spec = SeriesSpec(
        name=AuxSeriesId.PSI1_OVER_K,
        term=lambda k: polygamma(1, k + 1) / (k + 1),
        sign_pattern=SignPattern.ALL_POSITIVE,
        tail_class=TailClass.SMOOTH_RATIONAL_DECAY,
        smooth=lambda x: polygamma(1, x + 1) / (x + 1),
    )
    return sum_em_tail(spec, eps, budget)


def _nested_odd(eps, budget: int) -> SumResult:
    """Sum_{k>=1} (-1)^k/(2k+1)^2 Sum_{j=1}^{k} (-1)^(j-1)/(2j+1).

    The inner sums are not monotone enough for acceleration, so even and odd
    k are summed separately. Terms use the exact inner sum; the tails use
    u_k = 1 - pi/4 - (-1)^k f(k, 0)/4 as the smooth extension.
    """
    inner = [Fraction(0)]

    def u(k: int) -> Fraction:
        while len(inner) <= k:
            j = len(inner)
            inner.append(inner[-1] + Fraction(1 if j % 2 else -1, 2 * j + 1))
        return inner[k]

    limit = 1 - const("pi") / 4

    even = SeriesSpec(
        name=f"{AuxSeriesId.ALT_NESTED_ODD}:even",
        term=lambda i: to_xreal(u(2 * i)) / CTX.mpf(4 * i + 1) ** 2,
        sign_pattern=SignPattern.ALL_POSITIVE,
        tail_class=TailClass.SMOOTH_RATIONAL_DECAY,
        smooth=lambda x: (limit - kernel_psi_real(2 * x) / 4) / (4 * x + 1) ** 2,
    )
    odd = SeriesSpec(
        name=f"{AuxSeriesId.ALT_NESTED_ODD}:odd",
        term=lambda i: -to_xreal(u(2 * i + 1)) / CTX.mpf(4 * i + 3) ** 2,
        sign_pattern=SignPattern.GENERAL,
        tail_class=TailClass.SMOOTH_RATIONAL_DECAY,
        start_index=0,
        smooth=lambda x: -(limit + kernel_psi_real(2 * x + 1) / 4) / (4 * x + 3) ** 2,
    )
    return combine((1, sum_em_tail(even, eps / 2, budget)), (1, sum_em_tail(odd, eps / 2, budget)))


def _harmonic_generating(z, eps, budget: int) -> SumResult:
    """Sum_{k>=1} H_k z^(k+1) / (k+1)^2 for real z in (0, 1) or z = i.

    Negative z is rejected: its closed form needs Li2 and Li3 at 1 - z > 1,
    on their branch cut.
    """
    if CTX.convert(z) == CTX.mpc(0, 1):
        # k = 2j - 1 gives the real part, k = 2j the imaginary part
        real = sum_alternating(
            _alternating(
                "harmonic_generating(i):re",
                lambda j: to_xreal(harmonic(2 * j - 1)) / (4 * CTX.mpf(j) ** 2),
            ),
            eps / 2,
            budget,
        )
        imag = aux_series(AuxSeriesId.ALT_H2K, eps / 2, budget=budget)
        return SumResult(
            value=CTX.mpc(real.value, imag.value),
            terms_used=real.terms_used + imag.terms_used,
            tail_estimate=real.tail_estimate + imag.tail_estimate,
            method=SumMethod.COMBINED,
        )

    z = xreal(z)
    if not 0 < z < 1:
        raise SeriesError(f"harmonic generating series sampled on (0, 1) or at i, got {z}")
    spec = SeriesSpec(
        name=f"harmonic_generating({CTX.nstr(z, 6)})",
        term=lambda k: to_xreal(harmonic(k)) * z ** (k + 1) / CTX.mpf(k + 1) ** 2,
        sign_pattern=SignPattern.ALL_POSITIVE,
        tail_class=TailClass.GEOMETRIC,
        ratio_bound=z,
    )
    return sum_direct(spec, eps)


def _trigamma_generating(z, eps) -> SumResult:
    """Sum_{k>=1} psi_1(k+1) z^(k+1) / (k+1) for real z in (0, 1)."""
    z = xreal(z)
    if not 0 < z < 1:
        raise SeriesError(f"trigamma generating series needs 0 < z < 1, got {z}")
    spec = SeriesSpec(
        name=f"trigamma_generating({CTX.nstr(z, 6)})",
        term=lambda k: polygamma(1, k + 1) * z ** (k + 1) / (k + 1),
        sign_pattern=SignPattern.ALL_POSITIVE,
        tail_class=TailClass.GEOMETRIC,
        ratio_bound=z,
    )
    return sum_direct(spec, eps)


def aux_series(
    series_id: AuxSeriesId | str, eps, z=None, budget: int = DEFAULT_BUDGET
) -> SumResult:
    """Evaluate one auxiliary sum.

    Args:
        series_id: Which sum
        eps: Requested absolute accuracy
        z: Sample point, only for the two generating series
        budget: Term budget for the summation engine

    Raises:
        SeriesError: Unknown id, or z missing for a generating series
    """
    try:
        key = AuxSeriesId(series_id)
    except ValueError as e:
        raise SeriesError(f"unknown auxiliary series {series_id!r}") from e
    if key in PARAMETRIC and z is None:
        raise SeriesError(f"{key} needs a sample point z")
    logger.debug(f"Evaluating auxiliary series {key}")

    match key:
        case AuxSeriesId.PSI1_OVER_K:
            return _psi1_over_k(eps, budget)
        case AuxSeriesId.ALT_H2K:
            term = _harmonic_over_odd_square(lambda k: harmonic(2 * k))
            return sum_alternating(_alternating(key, term), eps, budget)
        case AuxSeriesId.ALT_HK:
            term = _harmonic_over_odd_square(harmonic)
            return sum_alternating(_alternating(key, term), eps, budget)
        case AuxSeriesId.ALT_HK_PLUS_2H2K:
            term = _harmonic_over_odd_square(lambda k: harmonic(k) + 2 * harmonic(2 * k))
            return sum_alternating(_alternating(key, term), eps, budget)
        case AuxSeriesId.ALT_NESTED_ODD:
            return _nested_odd(eps, budget)
        case AuxSeriesId.KERNEL_SUM_ODD_ZERO:
            return kernel_sum(0, 1, eps, budget=budget)
        case AuxSeriesId.ALT_H2K_MINUS_HK:
            term = _harmonic_over_odd_square(lambda k: harmonic(2 * k) - harmonic(k))
            return sum_alternating(_alternating(key, term), eps, budget)
        case AuxSeriesId.ALT_H2K1_MINUS_HK:
            term = _harmonic_over_odd_square(lambda k: harmonic(2 * k + 1) - harmonic(k))
            return sum_alternating(_alternating(key, term), eps, budget)
        case AuxSeriesId.ALT_H2K1:
            term = _harmonic_over_odd_square(lambda k: harmonic(2 * k + 1))
            return sum_alternating(_alternating(key, term, start=0), eps, budget)
        case AuxSeriesId.STRIDE_ONE_ZERO:
            return stride_one_sum(0, eps, budget)
        case AuxSeriesId.HARMONIC_GENERATING:
            return _harmonic_generating(z, eps, budget)
        case AuxSeriesId.TRIGAMMA_GENERATING:
            return _trigamma_generating(z, eps)
    raise SeriesError(f"unhandled auxiliary series {key}")
