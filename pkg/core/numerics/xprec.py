"""Extended-precision real/complex scalars, exact rationals and fundamental constants.

All floating values live in one private mpmath context fixed at 40 significant
digits, which leaves eight guard digits over the 32-digit contract. The context
precision is never changed after import, so values and functions here are safe
to share between worker threads.
"""

import threading
from enum import StrEnum
from fractions import Fraction

import mpmath

from core.exceptions import DivisionByZeroError, PrecisionDomainError

WORKING_DIGITS = 40
REPORT_DIGITS = 30
MAX_DECIMAL_DIGITS = 36

CTX = mpmath.MPContext()
CTX.dps = WORKING_DIGITS

XReal = CTX.mpf
XComplex = CTX.mpc
Rational = Fraction

EPS = CTX.mpf(10) ** (-WORKING_DIGITS)


class ArithOp(StrEnum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


class ElemFn(StrEnum):
    LN = "ln"
    EXP = "exp"
    SQRT = "sqrt"
    ATAN = "atan"
    SIN = "sin"
    COS = "cos"
    POW_INT = "pow_int"


class ConstName(StrEnum):
    PI = "pi"
    LN2 = "ln2"
    EULER_GAMMA = "euler_gamma"


def xreal(value) -> XReal:
    """Convert int, str, float, Fraction or XReal into an XReal."""
    if isinstance(value, Fraction):
        return to_xreal(value)
    return CTX.mpf(value)


def xcomplex(re, im=0) -> XComplex:
    return CTX.mpc(xreal(re), xreal(im))


def is_complex(value) -> bool:
    return isinstance(value, CTX.mpc) or isinstance(value, complex)


def conj(z):
    return CTX.conj(z)


def arith(a, b, op: ArithOp | str):
    """Apply one arithmetic operation.

    Raises:
        DivisionByZeroError: ``op`` is div and ``b`` is exactly zero
    """
    a = CTX.convert(a)
    b = CTX.convert(b)
    match ArithOp(op):
        case ArithOp.ADD:
            return a + b
        case ArithOp.SUB:
            return a - b
        case ArithOp.MUL:
            return a * b
        case ArithOp.DIV:
            if b == 0:
                raise DivisionByZeroError("division by zero")
            return a / b


def elem(x, fn: ElemFn | str, k: int | None = None):
    """Evaluate an elementary function; complex ln/atan use the principal branch.

    Args:
        x: XReal, or XComplex for ln, exp, atan, sin, cos and pow_int
        fn: Function to evaluate
        k: Integer exponent for pow_int

    Raises:
        PrecisionDomainError: Argument outside the real domain, or missing exponent
        DivisionByZeroError: Zero raised to a negative power
    """
    fn = ElemFn(fn)
    x = CTX.convert(x)
    complex_arg = isinstance(x, CTX.mpc)

    match fn:
        case ElemFn.LN:
            if x == 0 or (not complex_arg and x < 0):
                raise PrecisionDomainError(f"ln undefined at {CTX.nstr(x, 10)}")
            return CTX.ln(x)
        case ElemFn.EXP:
            return CTX.exp(x)
        case ElemFn.SQRT:
            if complex_arg or x < 0:
                raise PrecisionDomainError(f"sqrt needs a non-negative real, got {x}")
            return CTX.sqrt(x)
        case ElemFn.ATAN:
            if complex_arg and x.real == 0 and abs(x.imag) >= 1:
                raise PrecisionDomainError("atan has branch points at +-i")
            return CTX.atan(x)
        case ElemFn.SIN:
            return CTX.sin(x)
        case ElemFn.COS:
            return CTX.cos(x)
        case ElemFn.POW_INT:
            if k is None:
                raise PrecisionDomainError("pow_int needs an integer exponent")
            if x == 0 and k < 0:
                raise DivisionByZeroError("zero to a negative power")
            return x**k


_constants: dict[ConstName, XReal] = {}
_constants_lock = threading.Lock()


def const(name: ConstName | str) -> XReal:
    """Return a fundamental constant at working precision (computed once)."""
    try:
        key = ConstName(name)
    except ValueError as e:
        raise PrecisionDomainError(f"unknown constant {name!r}") from e

    value = _constants.get(key)
    if value is None:
        with _constants_lock:
            if not _constants:
                _constants[ConstName.PI] = +CTX.pi
                _constants[ConstName.LN2] = +CTX.ln2
                _constants[ConstName.EULER_GAMMA] = +CTX.euler
            value = _constants[key]
    return value


# Rational helpers


def rat(numerator: int, denominator: int = 1) -> Fraction:
    if denominator == 0:
        raise DivisionByZeroError("rational with zero denominator")
    return Fraction(numerator, denominator)


def rat_add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def rat_sub(a: Fraction, b: Fraction) -> Fraction:
    return a - b


def rat_mul(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def rat_div(a: Fraction, b: Fraction) -> Fraction:
    if b == 0:
        raise DivisionByZeroError("rational division by zero")
    return a / b


def rat_cmp(a: Fraction, b: Fraction) -> int:
    return (a > b) - (a < b)


def to_xreal(q: Fraction | int) -> XReal:
    """Round an exact rational to working precision."""
    q = Fraction(q)
    return CTX.mpf(q.numerator) / q.denominator


# Decimal I/O


def format_decimal(x, digits: int = REPORT_DIGITS) -> str:
    """Format with an explicit count of significant digits (at most 36)."""
    if not 1 <= digits <= MAX_DECIMAL_DIGITS:
        raise PrecisionDomainError(f"digits must be in 1..{MAX_DECIMAL_DIGITS}")
    return CTX.nstr(CTX.convert(x), digits, strip_zeros=False, min_fixed=-4, max_fixed=6)


def parse_decimal(text: str) -> XReal:
    try:
        return CTX.mpf(text.strip())
    except (ValueError, TypeError) as e:
        raise PrecisionDomainError(f"not a decimal number: {text!r}") from e
