"""Special functions on the positive real axis and the digamma kernel f(k, n).

Digamma and polygamma shift the argument upward with the recurrence and then
apply the Bernoulli asymptotic expansion. Integer zeta values come from the
Bernoulli table (even s), the Amdeberhan-Zeilberger series (s = 3) or a short
Euler-Maclaurin sum with exact derivatives (odd s >= 5).
"""

import math
import threading
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import cache

from core.exceptions import SpecialFunctionDomainError
from core.numerics.bernoulli import MAX_INDEX, bernoulli
from core.numerics.xprec import CTX, EPS, XReal, const, to_xreal, xreal
from core.observability.logging_config import get_logger

logger = get_logger(__name__)

DIGAMMA_SHIFT = 20
POLYGAMMA_SHIFT = 24
MAX_POLYGAMMA_ORDER = 4

# B_{2k}/(2k) for the digamma expansion
_DIGAMMA_COEFFS = [to_xreal(bernoulli(2 * k) / (2 * k)) for k in range(1, MAX_INDEX // 2 + 1)]

_harmonic_lock = threading.Lock()
_harmonic_table: list[Fraction] = [Fraction(0)]


def harmonic(n: int) -> Fraction:
    """Exact harmonic number H_n (H_0 = 0)."""
    if n < 0:
        raise SpecialFunctionDomainError(f"harmonic number needs n >= 0, got {n}")
    if n < len(_harmonic_table):
        return _harmonic_table[n]
    with _harmonic_lock:
        while len(_harmonic_table) <= n:
            k = len(_harmonic_table)
            _harmonic_table.append(_harmonic_table[-1] + Fraction(1, k))
        return _harmonic_table[n]


def _positive_arg(x, name: str) -> XReal:
    x = xreal(x)
    if x <= 0:
        raise SpecialFunctionDomainError(f"{name} needs x > 0, got {CTX.nstr(x, 10)}")
    return x


def digamma(x) -> XReal:
    """psi(x) for real x > 0."""
    x = _positive_arg(x, "digamma")

    shift = CTX.zero
    while x < DIGAMMA_SHIFT:
        shift -= 1 / x
        x += 1

    inv_x2 = 1 / (x * x)
    power = inv_x2
    total = CTX.ln(x) - 1 / (2 * x)
    threshold = EPS * abs(total) / 100
    for coeff in _DIGAMMA_COEFFS:
        term = coeff * power
        total -= term
        if abs(term) < threshold:
            break
        power *= inv_x2
    return shift + total


@cache
def _polygamma_coeffs(order: int) -> tuple[XReal, ...]:
    # B_{2k} (2k+n-1)! / (2k)!
    return tuple(
        to_xreal(
            bernoulli(2 * k)
            * Fraction(math.factorial(2 * k + order - 1), math.factorial(2 * k))
        )
        for k in range(1, MAX_INDEX // 2 + 1)
    )


def polygamma(order: int, x) -> XReal:
    """psi_n(x) for n in 1..4 and real x > 0.

    The tail of (-1)^(n+1) n! sum_k (x+k)^-(n+1) past the recurrence shift is
    replaced by its Euler-Maclaurin expansion.
    """
    if not 1 <= order <= MAX_POLYGAMMA_ORDER:
        raise SpecialFunctionDomainError(f"polygamma order must be 1..4, got {order}")
    x = _positive_arg(x, "polygamma")

    n_fact = math.factorial(order)
    head = CTX.zero
    while x < POLYGAMMA_SHIFT:
        head += 1 / x ** (order + 1)
        x += 1

    inv_x2 = 1 / (x * x)
    power = 1 / x ** (order + 2)
    tail = math.factorial(order - 1) / x**order + n_fact / (2 * x ** (order + 1))
    threshold = EPS * abs(tail) / 100
    for coeff in _polygamma_coeffs(order):
        term = coeff * power
        tail += term
        if abs(term) < threshold:
            break
        power *= inv_x2

    sign = 1 if order % 2 else -1
    return sign * (n_fact * head + tail)


def _zeta_even(s: int) -> XReal:
    k = s // 2
    coeff = (-1) ** (k + 1) * bernoulli(s) / (2 * math.factorial(s))
    return to_xreal(coeff) * (2 * const("pi")) ** s


def _zeta3_series() -> XReal:
    # Amdeberhan-Zeilberger: about three digits per term
    total = CTX.zero
    binom = 1
    for k in range(1, 40):
        binom = binom * (4 * k - 2) // k
        term = CTX.mpf(205 * k * k - 160 * k + 32) / (k**5 * CTX.mpf(binom) ** 5)
        total += term if k % 2 else -term
        if term < EPS / 100:
            break
    return total / 2


def _zeta_odd_em(s: int, cutoff: int = 20) -> XReal:
    """sum_{k<N} k^-s + N^(1-s)/(s-1) + N^-s/2 - sum_j B_2j/(2j)! d^(2j-1)/dx (x^-s)|_N"""
    n = CTX.mpf(cutoff)
    total = CTX.fsum(CTX.mpf(k) ** -s for k in range(1, cutoff))
    total += n ** (1 - s) / (s - 1) + n**-s / 2
    rising = Fraction(s)  # (s)_(2j-1)
    for j in range(1, MAX_INDEX // 2 + 1):
        if j > 1:
            rising *= (s + 2 * j - 3) * (s + 2 * j - 2)
        coeff = bernoulli(2 * j) / math.factorial(2 * j) * rising
        # odd-order derivative of x^-s carries a minus sign
        term = to_xreal(coeff) / n ** (s + 2 * j - 1)
        total += term
        if abs(term) < EPS / 100:
            break
    return total


_zeta_cache: dict[int, XReal] = {}
_zeta_lock = threading.Lock()


def zeta_int(s: int) -> XReal:
    """Riemann zeta at an integer s >= 2."""
    if s < 2:
        raise SpecialFunctionDomainError(f"zeta_int needs s >= 2, got {s}")
    value = _zeta_cache.get(s)
    if value is not None:
        return value
    with _zeta_lock:
        if s not in _zeta_cache:
            if s % 2 == 0 and s <= MAX_INDEX:
                _zeta_cache[s] = _zeta_even(s)
            elif s == 3:
                _zeta_cache[s] = _zeta3_series()
            else:
                _zeta_cache[s] = _zeta_odd_em(s)
        return _zeta_cache[s]


def eta_int(s: int) -> XReal:
    """Dirichlet eta at an integer s >= 1."""
    if s < 1:
        raise SpecialFunctionDomainError(f"eta_int needs s >= 1, got {s}")
    if s == 1:
        return const("ln2")
    return (1 - CTX.mpf(2) ** (1 - s)) * zeta_int(s)


def _catalan_series() -> XReal:
    # Broadhurst's BBP-type formula: G = sum_k 3 a_k - 2 b_k
    fast = (Fraction(1, 2), Fraction(-1, 2), Fraction(1, 4), 0, Fraction(-1, 8), Fraction(1, 8), Fraction(-1, 16))
    slow = (Fraction(1, 8), Fraction(1, 16), Fraction(1, 64), 0, Fraction(-1, 512), Fraction(-1, 1024), Fraction(-1, 4096))
    total = Fraction(0)
    for k in range(40):
        a = sum(c / (8 * k + r + 1) ** 2 for r, c in enumerate(fast) if c)
        b = sum(c / (8 * k + r + 1) ** 2 for r, c in enumerate(slow) if c)
        term = 3 * a / 16**k - 2 * b / 4096**k
        total += term
        if abs(term) < Fraction(1, 10**48):
            break
    return to_xreal(total)


class ConstantName(StrEnum):
    CATALAN_G = "catalan_G"
    ZETA3 = "zeta3"
    IM_LI3_1PI = "im_li3_1pi"


@dataclass(frozen=True)
class SpecialConstant:
    name: ConstantName
    value: XReal


_special: dict[ConstantName, SpecialConstant] = {}
_special_lock = threading.Lock()
_special_builders: dict[ConstantName, Callable[[], XReal]] = {
    ConstantName.CATALAN_G: _catalan_series,
    ConstantName.ZETA3: lambda: zeta_int(3),
}


def register_special_constant(name: ConstantName, builder: Callable[[], XReal]) -> None:
    """Register the builder of a constant defined in another module."""
    _special_builders[name] = builder


def special_constant(name: ConstantName | str) -> SpecialConstant:
    """Return a cached special constant, building it on first use."""
    key = ConstantName(name)
    entry = _special.get(key)
    if entry is None:
        if key not in _special_builders:
            import core.numerics.polylog  # noqa: F401  registers im_li3_1pi

        # build outside the lock: builders may request other constants
        value = _special_builders[key]()
        with _special_lock:
            entry = _special.setdefault(key, SpecialConstant(key, value))
        logger.debug(f"Cached special constant {key} = {CTX.nstr(entry.value, 15)}")
    return entry


def catalan() -> XReal:
    """Catalan's constant G."""
    return special_constant(ConstantName.CATALAN_G).value


# The digamma kernel f(k, n) = psi((2k+2n+5)/4) - psi((2k+2n+3)/4)


def kernel_psi_real(x, n: int = 0) -> XReal:
    """Smooth extension of f(., n) to a real argument x >= 0."""
    x = xreal(x)
    return digamma((2 * x + 2 * n + 5) / 4) - digamma((2 * x + 2 * n + 3) / 4)


def f_psi(k: int, n: int) -> XReal:
    """f(k, n) through two digamma evaluations; always positive."""
    if k < 0 or n < 0:
        raise SpecialFunctionDomainError(f"f(k, n) needs k, n >= 0, got ({k}, {n})")
    return digamma(Fraction(2 * k + 2 * n + 5, 4)) - digamma(Fraction(2 * k + 2 * n + 3, 4))


def _alternating_odd_reciprocals(upper: int) -> Fraction:
    """sum_{j=0}^{upper} (-1)^j / (2j+1)"""
    total = Fraction(0)
    for j in range(upper + 1):
        total += Fraction(-1 if j % 2 else 1, 2 * j + 1)
    return total


@cache
def _f_base(k: int) -> tuple[Fraction, Fraction]:
    # f(k, 0) = (-1)^(k-1) pi + 4 (-1)^k sum_{j<=k} (-1)^j/(2j+1)
    sign = -1 if k % 2 else 1
    return 4 * sign * _alternating_odd_reciprocals(k), Fraction(-sign)


def f_finite(k: int, n: int) -> tuple[Fraction, Fraction]:
    """Exact f(k, n) = rational_part + pi_coeff * pi.

    n = 0 uses the alternating odd-reciprocal sum; n >= 1 applies the
    functional equations that step n by one (odd n) or two (even n).
    """
    if k < 0 or n < 0:
        raise SpecialFunctionDomainError(f"f(k, n) needs k, n >= 0, got ({k}, {n})")
    rational, pi_coeff = _f_base(k)
    if n == 0:
        return rational, pi_coeff

    if n % 2:
        correction = Fraction(4, 2 * k + 3) + 4 * sum(
            (Fraction(1, 2 * k + 4 * j + 3) - Fraction(1, 2 * k + 4 * j + 1)
             for j in range(1, (n - 1) // 2 + 1)),
            Fraction(0),
        )
        return correction - rational, -pi_coeff

    correction = 4 * sum(
        (Fraction(1, 2 * k + 4 * j + 5) - Fraction(1, 2 * k + 4 * j + 3)
         for j in range(0, (n - 2) // 2 + 1)),
        Fraction(0),
    )
    return rational + correction, pi_coeff


def f_finite_value(k: int, n: int) -> XReal:
    rational, pi_coeff = f_finite(k, n)
    return to_xreal(rational) + to_xreal(pi_coeff) * const("pi")
