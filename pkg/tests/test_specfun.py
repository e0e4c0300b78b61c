"""Tests for digamma, polygamma, zeta values and the digamma kernel"""

from fractions import Fraction

import mpmath
import pytest

from core.exceptions import SpecialFunctionDomainError
from core.numerics.bernoulli import bernoulli, zeta_nonpositive
from core.numerics.specfun import (
    catalan,
    digamma,
    eta_int,
    f_finite,
    f_finite_value,
    f_psi,
    harmonic,
    polygamma,
    zeta_int,
)
from core.numerics.xprec import CTX, const
from tests.conftest import close

TIGHT = mpmath.mpf(10) ** -35


class TestBernoulli:
    def test_small_values(self):
        assert bernoulli(0) == 1
        assert bernoulli(1) == Fraction(-1, 2)
        assert bernoulli(2) == Fraction(1, 6)
        assert bernoulli(3) == 0
        assert bernoulli(12) == Fraction(-691, 2730)

    def test_table_matches_oracle(self, oracle):
        for n in (20, 40, 60):
            b = bernoulli(n)
            assert close(oracle.mpf(b.numerator) / b.denominator, oracle.bernoulli(n), abs(oracle.bernoulli(n)) * TIGHT)

    def test_out_of_range(self):
        with pytest.raises(SpecialFunctionDomainError):
            bernoulli(61)

    def test_zeta_nonpositive(self):
        assert zeta_nonpositive(0) == Fraction(-1, 2)
        assert zeta_nonpositive(1) == Fraction(-1, 12)
        assert zeta_nonpositive(2) == 0


class TestHarmonic:
    def test_values(self):
        assert harmonic(0) == 0
        assert harmonic(1) == 1
        assert harmonic(4) == Fraction(25, 12)

    def test_negative(self):
        with pytest.raises(SpecialFunctionDomainError):
            harmonic(-1)


class TestDigamma:
    @pytest.mark.parametrize("x", ["0.001", "0.25", "0.75", "1", "1.5", "7.3", "19.99", "250"])
    def test_matches_oracle(self, oracle, x):
        assert close(digamma(CTX.mpf(x)), oracle.digamma(oracle.mpf(x)), TIGHT * max(1, abs(oracle.digamma(oracle.mpf(x)))))

    def test_exact_fraction_argument(self, oracle):
        assert close(digamma(Fraction(5, 4)), oracle.digamma(oracle.mpf(5) / 4), TIGHT)

    def test_special_values(self):
        # psi(1) = -gamma, psi(1/2) = -gamma - 2 ln 2
        gamma = const("euler_gamma")
        assert abs(digamma(1) + gamma) < CTX.mpf(10) ** -37
        assert abs(digamma(Fraction(1, 2)) + gamma + 2 * const("ln2")) < CTX.mpf(10) ** -37

    @pytest.mark.parametrize("x", [0, -1, "-0.5"])
    def test_rejects_non_positive(self, x):
        with pytest.raises(SpecialFunctionDomainError):
            digamma(x)


class TestPolygamma:
    @pytest.mark.parametrize("order", [1, 2, 3, 4])
    @pytest.mark.parametrize("x", ["0.5", "2", "31.25"])
    def test_matches_oracle(self, oracle, order, x):
        expected = oracle.polygamma(order, oracle.mpf(x))
        assert close(polygamma(order, CTX.mpf(x)), expected, TIGHT * max(1, abs(expected)))

    def test_trigamma_at_one(self):
        assert abs(polygamma(1, 1) - const("pi") ** 2 / 6) < CTX.mpf(10) ** -37

    def test_order_range(self):
        with pytest.raises(SpecialFunctionDomainError):
            polygamma(5, 1)
        with pytest.raises(SpecialFunctionDomainError):
            polygamma(0, 1)

    @pytest.mark.parametrize("order", [1, 2, 3, 4])
    @pytest.mark.parametrize("eighths", [1, 2, 3, 5, 7])
    def test_reflection(self, oracle, order, eighths):
        """Test psi_n(1-x) + (-1)^(n+1) psi_n(x) = (-1)^n pi d^n/dx^n cot(pi x)"""
        x = CTX.mpf(eighths) / 8
        lhs = polygamma(order, 1 - x) + (-1) ** (order + 1) * polygamma(order, x)
        cot_derivative = oracle.diff(
            lambda t: oracle.cot(oracle.pi * t), oracle.mpf(eighths) / 8, order
        )
        expected = (-1) ** order * oracle.pi * cot_derivative
        assert close(lhs, expected, mpmath.mpf(10) ** -30 * max(1, abs(expected)))


class TestZeta:
    @pytest.mark.parametrize("s", [2, 3, 4, 5, 7, 10])
    def test_matches_oracle(self, oracle, s):
        assert close(zeta_int(s), oracle.zeta(s), TIGHT)

    def test_eta(self, oracle):
        assert eta_int(1) == const("ln2")
        assert close(eta_int(3), oracle.altzeta(3), TIGHT)

    def test_catalan(self, oracle):
        assert close(catalan(), oracle.catalan, TIGHT)

    def test_rejects_s_below_two(self):
        with pytest.raises(SpecialFunctionDomainError):
            zeta_int(1)


class TestKernel:
    def test_f_zero_zero(self):
        # psi(5/4) - psi(3/4) = 4 - pi
        rational, pi_coeff = f_finite(0, 0)
        assert (rational, pi_coeff) == (4, -1)

    @pytest.mark.parametrize("n", range(0, 7))
    def test_finite_matches_digamma(self, n):
        for k in (0, 1, 2, 5, 17, 40):
            assert abs(f_psi(k, n) - f_finite_value(k, n)) < CTX.mpf(10) ** -34

    def test_depends_only_on_k_plus_n(self):
        for total in range(0, 9):
            forms = {f_finite(k, total - k) for k in range(0, total + 1)}
            assert len(forms) == 1

    def test_positive_and_decreasing(self):
        values = [f_psi(k, 0) for k in range(0, 30)]
        assert all(v > 0 for v in values)
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_rejects_negative_indices(self):
        with pytest.raises(SpecialFunctionDomainError):
            f_psi(-1, 0)
        with pytest.raises(SpecialFunctionDomainError):
            f_finite(0, -2)
