"""Tests for extended-precision scalars and constants"""

import random
from fractions import Fraction

import mpmath
import pytest

from core.exceptions import DivisionByZeroError, PrecisionDomainError
from core.numerics.xprec import (
    CTX,
    REPORT_DIGITS,
    WORKING_DIGITS,
    ArithOp,
    ElemFn,
    arith,
    const,
    elem,
    format_decimal,
    parse_decimal,
    rat,
    rat_add,
    rat_cmp,
    rat_div,
    rat_mul,
    to_xreal,
    xreal,
)
from tests.conftest import close


def test_private_context_precision():
    assert CTX.dps == WORKING_DIGITS
    assert CTX is not mpmath.mp


def test_global_mpmath_context_untouched():
    before = mpmath.mp.dps
    const("pi")
    assert mpmath.mp.dps == before


@pytest.mark.parametrize("name,reference", [("pi", "pi"), ("ln2", "ln2"), ("euler_gamma", "euler")])
def test_constants_match_oracle(oracle, name, reference):
    assert close(const(name), getattr(oracle, reference), mpmath.mpf(10) ** -38)


def test_unknown_constant():
    with pytest.raises(PrecisionDomainError):
        const("tau")


def test_constant_is_cached():
    assert const("pi") is const("pi")


def test_to_xreal_rounds_fraction(oracle):
    assert close(to_xreal(Fraction(1, 3)), oracle.mpf(1) / 3, mpmath.mpf(10) ** -39)


def test_xreal_accepts_mixed_inputs():
    assert xreal(Fraction(1, 4)) == CTX.mpf("0.25")
    assert xreal("0.5") == CTX.mpf(1) / 2
    assert xreal(3) == 3


def test_arith_division_by_zero():
    with pytest.raises(DivisionByZeroError):
        arith(1, 0, ArithOp.DIV)
    assert arith(6, 3, "div") == 2


def test_elem_domain_errors():
    with pytest.raises(PrecisionDomainError):
        elem(-1, ElemFn.LN)
    with pytest.raises(PrecisionDomainError):
        elem(-4, ElemFn.SQRT)
    with pytest.raises(PrecisionDomainError):
        elem(CTX.mpc(0, 1), ElemFn.ATAN)
    with pytest.raises(DivisionByZeroError):
        elem(0, ElemFn.POW_INT, k=-1)


def test_elem_complex_log_principal_branch():
    value = elem(CTX.mpc(-1, 0), ElemFn.LN)
    assert abs(value.imag - const("pi")) < CTX.mpf(10) ** -38


def test_rational_helpers():
    assert rat(2, 4) == Fraction(1, 2)
    assert rat_cmp(Fraction(1, 3), Fraction(1, 2)) == -1
    with pytest.raises(DivisionByZeroError):
        rat_div(Fraction(1), Fraction(0))
    with pytest.raises(DivisionByZeroError):
        rat(1, 0)


def test_format_decimal_significant_digits():
    text = format_decimal(const("pi"), REPORT_DIGITS)
    digits = text.replace(".", "").lstrip("0")
    assert len(digits) == REPORT_DIGITS
    assert text.startswith("3.1415926535897932384626433832")


def test_format_decimal_rejects_too_many_digits():
    with pytest.raises(PrecisionDomainError):
        format_decimal(1, 37)


def test_parse_decimal():
    assert parse_decimal(" 0.125 ") == CTX.mpf(1) / 8
    with pytest.raises(PrecisionDomainError):
        parse_decimal("pi")


class TestRandomizedArithmetic:
    DRAWS = 2000

    @pytest.fixture
    def rng(self):
        return random.Random(1729)

    def _xreal(self, rng):
        return xreal(rng.uniform(0.5, 2)) * CTX.mpf(10) ** rng.randint(-8, 8)

    def test_add_then_subtract_recovers(self, rng):
        for _ in range(self.DRAWS):
            a, b = self._xreal(rng), self._xreal(rng)
            back = arith(arith(a, b, ArithOp.ADD), b, ArithOp.SUB)
            assert abs(back - a) <= abs(a + b) * CTX.mpf(10) ** -31

    def test_log_of_product(self, rng):
        for _ in range(self.DRAWS):
            a, b = self._xreal(rng), self._xreal(rng)
            lhs = elem(arith(a, b, ArithOp.MUL), ElemFn.LN)
            rhs = elem(a, ElemFn.LN) + elem(b, ElemFn.LN)
            assert abs(lhs - rhs) <= max(1, abs(lhs)) * CTX.mpf(10) ** -30

    def test_rational_cross_multiplication_is_exact(self, rng):
        for _ in range(self.DRAWS):
            p, r = rng.randint(-10**12, 10**12), rng.randint(-10**12, 10**12)
            q, s = rng.randint(1, 10**12), rng.randint(1, 10**12)
            total = rat_add(rat(p, q), rat(r, s))
            assert rat_mul(total, Fraction(q * s)) == p * s + r * q
