"""Exact Bernoulli numbers B_0 .. B_60 (convention B_1 = -1/2).

Stored as a table; odd indices above 1 vanish and are omitted.
"""

from fractions import Fraction

from core.exceptions import SpecialFunctionDomainError

MAX_INDEX = 60

_EVEN = {
    0: Fraction(1),
    2: Fraction(1, 6),
    4: Fraction(-1, 30),
    6: Fraction(1, 42),
    8: Fraction(-1, 30),
    10: Fraction(5, 66),
    12: Fraction(-691, 2730),
    14: Fraction(7, 6),
    16: Fraction(-3617, 510),
    18: Fraction(43867, 798),
    20: Fraction(-174611, 330),
    22: Fraction(854513, 138),
    24: Fraction(-236364091, 2730),
    26: Fraction(8553103, 6),
    28: Fraction(-23749461029, 870),
    30: Fraction(8615841276005, 14322),
    32: Fraction(-7709321041217, 510),
    34: Fraction(2577687858367, 6),
    36: Fraction(-26315271553053477373, 1919190),
    38: Fraction(2929993913841559, 6),
    40: Fraction(-261082718496449122051, 13530),
    42: Fraction(1520097643918070802691, 1806),
    44: Fraction(-27833269579301024235023, 690),
    46: Fraction(596451111593912163277961, 282),
    48: Fraction(-5609403368997817686249127547, 46410),
    50: Fraction(495057205241079648212477525, 66),
    52: Fraction(-801165718135489957347924991853, 1590),
    54: Fraction(29149963634884862421418123812691, 798),
    56: Fraction(-2479392929313226753685415739663229, 870),
    58: Fraction(84483613348880041862046775994036021, 354),
    60: Fraction(-1215233140483755572040304994079820246041491, 56786730),
}


def bernoulli(n: int) -> Fraction:
    """Return B_n exactly for 0 <= n <= 60."""
    if n < 0 or n > MAX_INDEX:
        raise SpecialFunctionDomainError(f"Bernoulli table covers 0..{MAX_INDEX}, got {n}")
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    return _EVEN[n]


def zeta_nonpositive(m: int) -> Fraction:
    """Exact zeta(-m) for m >= 0: -1/2 at m = 0, else -B_{m+1}/(m+1)."""
    if m == 0:
        return Fraction(-1, 2)
    return -bernoulli(m + 1) / (m + 1)
