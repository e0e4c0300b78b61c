"""Complex dilogarithm and trilogarithm.

Region map, tried in order (s = 2 or 3, principal branches throughout):

    z = 0, z = 1            exact values 0 and zeta(s)
    real z > 1              rejected (branch cut)
    |z| > 1                 inversion z -> 1/z
    |z| <= 1/2 (s=2)        power series sum z^k / k^s
    |z| <= 0.8 (s=3)        power series
    |ln z| <= 1.25          expansion in mu = ln z around z = 1
    s = 2                   Landen z -> z/(z-1) when that lands in |w| <= 1/2,
                            otherwise Euler reflection z -> 1 - z
    s = 3, real z < 0       duplication Li3(z) = Li3(z^2)/4 - Li3(-z)
    s = 3 otherwise         three-term identity in 1 - z and z/(z-1)

Every mapped argument reaches a terminal region within three steps; the depth
guard only trips on a defect in the map.
"""

import math
from functools import cache

from core.exceptions import BranchCutError, SpecialFunctionDomainError, SpecialFunctionError
from core.numerics.bernoulli import MAX_INDEX, zeta_nonpositive
from core.numerics.specfun import (
    ConstantName,
    harmonic,
    register_special_constant,
    special_constant,
    zeta_int,
)
from core.numerics.xprec import CTX, EPS, XComplex, XReal, to_xreal

SERIES_RADIUS = {2: CTX.mpf("0.5"), 3: CTX.mpf("0.8")}
LOG_RADIUS = CTX.mpf("1.25")
LANDEN_RADIUS = CTX.mpf("0.5")
MAX_DEPTH = 8
MAX_SERIES_TERMS = 4000


def _as_complex(z) -> XComplex:
    return CTX.mpc(CTX.convert(z))


def _power_series(s: int, z: XComplex) -> XComplex:
    total = CTX.mpc(0)
    power = z
    for k in range(1, MAX_SERIES_TERMS):
        term = power / CTX.mpf(k) ** s
        total += term
        if abs(term) <= EPS * abs(total) / 100:
            return total
        power *= z
    raise SpecialFunctionError(f"Li{s} power series did not converge at {z}")


@cache
def _log_coefficients(s: int) -> tuple[tuple[int, XReal], ...]:
    """Nonzero zeta(s-k)/k! for k >= s."""
    coeffs = []
    for k in range(s, s + MAX_INDEX):
        value = zeta_nonpositive(k - s)
        if value:
            coeffs.append((k, to_xreal(value / math.factorial(k))))
    return tuple(coeffs)


def _log_expansion(s: int, mu: XComplex) -> XComplex:
    # Li_s(e^mu) = sum_{k != s-1} zeta(s-k) mu^k/k! + mu^(s-1)/(s-1)! (H_{s-1} - ln(-mu))
    total = CTX.mpc(zeta_int(s))
    for k in range(1, s - 1):
        total += zeta_int(s - k) * mu**k / math.factorial(k)
    h = to_xreal(harmonic(s - 1))
    total += mu ** (s - 1) / math.factorial(s - 1) * (h - CTX.ln(-mu))

    for k, coeff in _log_coefficients(s):
        term = coeff * mu**k
        total += term
        if abs(term) <= EPS * abs(total) / 100:
            break
    return total


def _polylog(s: int, z: XComplex, depth: int) -> XComplex:
    if depth > MAX_DEPTH:
        raise SpecialFunctionError(f"Li{s} region map exceeded depth {MAX_DEPTH} at {z}")
    if z == 0:
        return CTX.mpc(0)
    if z.imag == 0 and z.real > 1:
        raise BranchCutError(f"Li{s}({CTX.nstr(z.real, 15)}) lies on the cut (1, inf)")
    if z == 1:
        return CTX.mpc(zeta_int(s))

    zeta2 = zeta_int(2)
    if abs(z) > 1:
        log_neg = CTX.ln(-z)
        inner = _polylog(s, 1 / z, depth + 1)
        if s == 2:
            return -inner - zeta2 - log_neg**2 / 2
        return inner - zeta2 * log_neg - log_neg**3 / 6

    if abs(z) <= SERIES_RADIUS[s]:
        return _power_series(s, z)

    mu = CTX.ln(z)
    if abs(mu) <= LOG_RADIUS:
        return _log_expansion(s, mu)

    log_1mz = CTX.ln(1 - z)
    if s == 2:
        w = z / (z - 1)
        if abs(w) <= LANDEN_RADIUS:
            return -_polylog(2, w, depth + 1) - log_1mz**2 / 2
        return zeta2 - mu * log_1mz - _polylog(2, 1 - z, depth + 1)

    if z.imag == 0:
        return _polylog(3, z * z, depth + 1) / 4 - _polylog(3, -z, depth + 1)

    w = z / (z - 1)
    return (
        -_polylog(3, 1 - z, depth + 1)
        - _polylog(3, w, depth + 1)
        + log_1mz**2 * (log_1mz - 3 * mu) / 6
        + zeta2 * log_1mz
        + zeta_int(3)
    )


def dilog(z) -> XComplex:
    """Li2(z) for z off the cut (1, inf)."""
    return _polylog(2, _as_complex(z), 0)


def trilog(z) -> XComplex:
    """Li3(z) for z off the cut (1, inf)."""
    return _polylog(3, _as_complex(z), 0)


def polylog(s: int, z) -> XComplex:
    if s == 2:
        return dilog(z)
    if s == 3:
        return trilog(z)
    raise SpecialFunctionDomainError(f"only Li2 and Li3 are implemented, got s={s}")


def _im_li3_one_plus_i() -> XReal:
    return trilog(CTX.mpc(1, 1)).imag


register_special_constant(ConstantName.IM_LI3_1PI, _im_li3_one_plus_i)


def im_li3_1pi() -> XReal:
    """Im Li3(1+i), cached."""
    return special_constant(ConstantName.IM_LI3_1PI).value


def zeta3() -> XReal:
    return special_constant(ConstantName.ZETA3).value
