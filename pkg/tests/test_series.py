"""Tests for the summation engines and the digamma-kernel sums"""

from fractions import Fraction

import mpmath
import pytest

from core.exceptions import BudgetExceededError, SeriesError
from core.numerics.series import (
    KernelForm,
    SeriesSpec,
    SignPattern,
    SumMethod,
    TailClass,
    WeightKind,
    combine,
    fourier_ln2cos_check,
    kernel_alt_sum,
    kernel_sum,
    stride_one_sum,
    sum_alternating,
    sum_direct,
    sum_em_tail,
    summarize,
    weighted_kernel_sum,
    weighted_stride_one_sum,
)
from core.numerics.specfun import catalan, digamma, f_finite, f_psi, zeta_int
from core.numerics.xprec import CTX, const
from tests.conftest import close

EPS = CTX.mpf(10) ** -30


def _alternating(name, magnitude, start=1):
    return SeriesSpec(
        name=name,
        term=magnitude,
        sign_pattern=SignPattern.STRICTLY_ALTERNATING,
        tail_class=TailClass.ALTERNATING_DECREASING,
        start_index=start,
    )


def _positive(name, term, smooth, start=1):
    return SeriesSpec(
        name=name,
        term=term,
        sign_pattern=SignPattern.ALL_POSITIVE,
        tail_class=TailClass.SMOOTH_RATIONAL_DECAY,
        start_index=start,
        smooth=smooth,
    )


class TestAlternating:
    def test_log2(self):
        # Sum_{k>=1} (-1)^k / k = -ln 2
        result = sum_alternating(_alternating("log2", lambda k: 1 / CTX.mpf(k)), EPS)
        assert abs(result.value + const("ln2")) < EPS
        assert result.method is SumMethod.ACCELERATED

    def test_catalan_from_zero(self):
        spec = _alternating("catalan", lambda k: 1 / CTX.mpf(2 * k + 1) ** 2, start=0)
        assert abs(sum_alternating(spec, EPS).value - catalan()) < EPS

    def test_bracket_contains_value(self):
        result = sum_alternating(_alternating("log2", lambda k: 1 / CTX.mpf(k)), EPS)
        low, high = result.bracket
        assert low <= result.value <= high

    def test_budget_exceeded(self):
        spec = _alternating("log2", lambda k: 1 / CTX.mpf(k))
        with pytest.raises(BudgetExceededError) as info:
            sum_alternating(spec, CTX.mpf(10) ** -35, budget=16)
        assert info.value.best_estimate is not None

    def test_rejects_positive_series(self):
        spec = _positive("zeta2", lambda k: 1 / CTX.mpf(k) ** 2, lambda x: 1 / x**2)
        with pytest.raises(SeriesError):
            sum_alternating(spec, EPS)


class TestEulerMaclaurin:
    @pytest.mark.parametrize("s", [2, 3, 4])
    def test_zeta(self, s):
        spec = _positive(f"zeta{s}", lambda k: 1 / CTX.mpf(k) ** s, lambda x: 1 / x**s)
        result = sum_em_tail(spec, EPS)
        assert abs(result.value - zeta_int(s)) < EPS
        assert result.method is SumMethod.EM_TAIL

    def test_needs_smooth_extension(self):
        spec = _positive("no_smooth", lambda k: 1 / CTX.mpf(k) ** 2, None)
        with pytest.raises(SeriesError):
            sum_em_tail(spec, EPS)

    def test_budget_below_first_cutoff(self):
        spec = _positive("zeta2", lambda k: 1 / CTX.mpf(k) ** 2, lambda x: 1 / x**2)
        with pytest.raises(BudgetExceededError):
            sum_em_tail(spec, EPS, budget=64)


class TestDirect:
    def test_geometric(self):
        spec = SeriesSpec(
            name="geometric",
            term=lambda k: CTX.mpf(1) / 3**k,
            sign_pattern=SignPattern.ALL_POSITIVE,
            tail_class=TailClass.GEOMETRIC,
            ratio_bound=CTX.mpf(1) / 3,
        )
        result = sum_direct(spec, EPS)
        assert abs(result.value - CTX.mpf(1) / 2) < EPS
        assert summarize(spec, EPS).value == result.value

    def test_needs_ratio_bound(self):
        spec = SeriesSpec(
            name="no_ratio",
            term=lambda k: CTX.mpf(1) / 3**k,
            sign_pattern=SignPattern.ALL_POSITIVE,
            tail_class=TailClass.GEOMETRIC,
        )
        with pytest.raises(SeriesError):
            sum_direct(spec, EPS)


def test_combine_adds_terms_and_tails():
    spec = _positive("zeta2", lambda k: 1 / CTX.mpf(k) ** 2, lambda x: 1 / x**2)
    part = sum_em_tail(spec, EPS)
    total = combine((Fraction(1, 2), part), (-1, part))
    assert abs(total.value + part.value / 2) < EPS
    assert total.terms_used == 2 * part.terms_used
    assert total.method is SumMethod.COMBINED


class TestKernelSums:
    def test_psi_and_finite_kernels_agree(self):
        psi = kernel_sum(1, 3, EPS, kernel=KernelForm.PSI)
        finite = kernel_sum(1, 3, EPS, kernel=KernelForm.FINITE)
        assert abs(psi.value - finite.value) < 2 * EPS

    def test_alternating_kernels_agree(self):
        psi = kernel_alt_sum(2, 0, EPS, kernel=KernelForm.PSI)
        finite = kernel_alt_sum(2, 0, EPS, kernel=KernelForm.FINITE)
        assert abs(psi.value - finite.value) < 2 * EPS

    def test_kernel_sum_matches_oracle(self, oracle):
        # Sum f(k, 0)/(2k+1)^2 = pi^2 ln(2)/4 + 7 zeta(3)/4 + (1 - G) pi - 4
        pi = oracle.pi
        expected = pi**2 * oracle.ln2 / 4 + 7 * oracle.zeta(3) / 4 + (1 - oracle.catalan) * pi - 4
        assert close(kernel_sum(0, 1, CTX.mpf(10) ** -25).value, expected, mpmath.mpf(10) ** -24)

    def test_kernel_sum_positive(self):
        assert kernel_sum(3, 2, EPS).value > 0

    def test_negative_arguments_rejected(self):
        with pytest.raises(SeriesError):
            kernel_sum(-1, 0, EPS)
        with pytest.raises(SeriesError):
            kernel_alt_sum(0, -1, EPS)

    def test_weighted_is_half_plain_minus_alternating(self):
        plain = kernel_sum(2, 4, EPS)
        alternating = kernel_alt_sum(2, 4, EPS)
        weighted = weighted_kernel_sum(2, 1, WeightKind.HALF_MINUS, EPS)
        assert abs(weighted.value - (plain.value / 2 - alternating.value)) < 2 * EPS

    def test_weighted_half_plus_uses_shifted_alpha(self):
        plain = kernel_sum(1, 2, EPS)
        alternating = kernel_alt_sum(1, 2, EPS)
        weighted = weighted_kernel_sum(1, 1, "half_plus", EPS)
        assert abs(weighted.value - (plain.value / 2 + alternating.value)) < 2 * EPS

    def test_weighted_domain(self):
        with pytest.raises(SeriesError):
            weighted_kernel_sum(1, 0, WeightKind.HALF_PLUS, EPS)
        with pytest.raises(SeriesError):
            weighted_kernel_sum(1, -1, WeightKind.HALF_MINUS, EPS)

    @pytest.mark.parametrize("n", [0, 1, 2])
    @pytest.mark.parametrize("alpha", [0, 1, 2, 3])
    def test_alternating_within_partial_sum_bracket(self, n, alpha):
        terms = 120
        partial = CTX.zero
        for k in range(1, terms + 1):
            partial += (-1) ** k * f_psi(k, n) / (2 * k + alpha) ** 2
        next_term = f_psi(terms + 1, n) / (2 * terms + 2 + alpha) ** 2
        following = partial + (-1) ** (terms + 1) * next_term
        result = kernel_alt_sum(n, alpha, EPS)
        lo, hi = min(partial, following), max(partial, following)
        assert lo - result.tail_estimate <= result.value <= hi + result.tail_estimate
        assert abs(result.value - partial) <= next_term + EPS

    @pytest.mark.parametrize("n", [0, 1, 3])
    def test_parameter_shift_reindexes_exactly(self, n):
        alpha, terms = 3, 30

        def partial(pairs):
            pairs = list(pairs)
            rational = sum((w * r for w, (r, _) in pairs), Fraction(0))
            pi_coeff = sum((w * p for w, (_, p) in pairs), Fraction(0))
            return rational, pi_coeff

        shifted = partial(
            (Fraction(1, (2 * k + alpha) ** 2), f_finite(k, n + 1))
            for k in range(1, terms + 1)
        )
        reindexed = partial(
            (Fraction(1, (2 * k + alpha - 2) ** 2), f_finite(k, n))
            for k in range(2, terms + 2)
        )
        assert shifted == reindexed

    @pytest.mark.parametrize("n", [0, 1])
    @pytest.mark.parametrize("alpha", [2, 3])
    def test_parameter_shift_of_full_sum(self, n, alpha):
        shifted = kernel_sum(n + 1, alpha, EPS).value
        lowered = kernel_sum(n, alpha - 2, EPS).value - f_psi(1, n) / alpha**2
        assert close(shifted, lowered, CTX.mpf(10) ** -28)

    @pytest.mark.parametrize("engine", [kernel_sum, kernel_alt_sum])
    def test_tail_estimate_covers_true_error(self, engine):
        coarse = engine(1, 1, CTX.mpf(10) ** -14)
        fine = engine(1, 1, EPS)
        assert coarse.tail_estimate > 0
        assert abs(coarse.value - fine.value) <= coarse.tail_estimate


class TestStrideOne:
    def test_positive_and_decreasing_in_n(self):
        values = [stride_one_sum(n, CTX.mpf(10) ** -25).value for n in range(3)]
        assert all(v > 0 for v in values)
        assert values[0] > values[1] > values[2]

    def test_weighted_stride_one_combination(self):
        eps = CTX.mpf(10) ** -25
        weighted = weighted_stride_one_sum(1, eps).value
        expected = kernel_sum(1, 0, eps).value / 2 - stride_one_sum(1, eps).value
        assert abs(weighted - expected) < 4 * eps

    def test_negative_n(self):
        with pytest.raises(SeriesError):
            stride_one_sum(-1, EPS)

    @pytest.mark.parametrize("n", [0, 2])
    def test_parity_split_matches_stride_one_terms(self, n):
        def psi_gap(top, bottom, den):
            return digamma(Fraction(top, den)) - digamma(Fraction(bottom, den))

        half = 40
        direct = sum(
            (
                psi_gap(k + 2 * n + 5, k + 2 * n + 3, 4) / k**2
                for k in range(1, 2 * half + 1)
            ),
            CTX.zero,
        )
        even = sum((f_psi(j, n) / (4 * j * j) for j in range(1, half + 1)), CTX.zero)
        odd = sum(
            (
                psi_gap(j + n + 2, j + n + 1, 2) / (2 * j - 1) ** 2
                for j in range(1, half + 1)
            ),
            CTX.zero,
        )
        assert close(direct, even + odd, CTX.mpf(10) ** -33)


class TestFourier:
    @pytest.mark.parametrize("z", ["-0.6", "0.3", "1.0"])
    def test_residual_small(self, z):
        assert fourier_ln2cos_check(CTX.mpf(z), 400, CTX.mpf(10) ** -12) < CTX.mpf(10) ** -10

    def test_domain(self):
        with pytest.raises(SeriesError):
            fourier_ln2cos_check(2, 400, EPS)
        with pytest.raises(SeriesError):
            fourier_ln2cos_check(CTX.mpf("0.3"), 0, EPS)
