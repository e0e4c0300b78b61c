"""Closed forms of the digamma-kernel sums as exact ClosedForm vectors.

Parameter conventions:

    kernel_sum_odd_rhs(n, m)       Sum_{k>=1} f(k, n) / (2k + 2m + 1)^2,          n >= m >= 0
    kernel_alt_sum_odd_rhs(n, m)   Sum_{k>=1} (-1)^k f(k, n) / (2k + 2m + 1)^2,   n >= m >= 0
    kernel_sum_even_rhs(n, m)      Sum_{k>=1} f(k, n) / (2k + 2m)^2,              n >= m >= 0
    kernel_alt_sum_even_rhs(n, m)  Sum_{k>=1} (-1)^k f(k, n) / (2k + 2m)^2,       n >= m >= 0
    weighted_rhs(n, m, weight)     half_minus: alpha = 4m, n >= 2m
                                   half_plus:  alpha = 4m - 2, n >= 2m - 1, m >= 1
    stride_one_rhs(n)              Sum_{k>=1} [psi((k+2n+5)/4) - psi((k+2n+3)/4)] / k^2
    weighted_stride_one_rhs(n)     half the alpha = 0 kernel sum minus the stride-one sum

Shifting the denominator by m only moves the summation start, since f(k, n)
depends on k + n alone; the m > 0 formulas are the m = 0 formulas at
d = n - m with a finite prefix removed. Every finite sum is folded into exact
Fraction coefficients.
"""

from collections.abc import Callable
from fractions import Fraction as F

from core.exceptions import ClosedFormDomainError
from core.numerics.closedform import ClosedForm
from core.numerics.series import WeightKind
from core.numerics.specfun import harmonic as H


def _sg(j: int) -> int:
    return -1 if j % 2 else 1


def _rsum(lo: int, hi: int, term: Callable[[int], F]) -> F:
    total = F(0)
    for j in range(lo, hi + 1):
        total += term(j)
    return total


def _alt_odd(n: int) -> F:
    """sum_{j=1}^{n} (-1)^j / (2j+1)"""
    return _rsum(1, n, lambda j: F(_sg(j), 2 * j + 1))


def _d_odd(j: int) -> int:
    return (4 * j + 3) ** 2 * (4 * j + 1) ** 2


def _d_even(j: int) -> int:
    return (4 * j + 5) ** 2 * (4 * j + 3) ** 2


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise ClosedFormDomainError(message)


# Odd denominators, plain kernel


def _kernel_sum_odd_base(n: int) -> ClosedForm:
    if n == 0:
        return ClosedForm.of("n=0", ONE=-4, PI=1, G_PI=-1, PI2_LN2=F(1, 4), ZETA3=F(7, 4))
    if n == 1:
        return ClosedForm.of(
            "n=1", ONE=F(5, 3), PI=-1, G_PI=1, PI2=F(1, 4), PI2_LN2=F(-1, 4), ZETA3=F(-7, 4)
        )
    if n == 2:
        return ClosedForm.of(
            "n=2", ONE=F(-14, 5), PI=1, G_PI=-1, PI2_LN2=F(1, 4), PI2=F(-1, 8), ZETA3=F(7, 4)
        )
    if n % 2:
        p = (n - 1) // 2
        one = (
            3
            - F(1, 8) * _rsum(1, p, lambda j: (4 * j + 1) * (H(2 * j - 1) - 2 * H(4 * j - 1))
                              / (j * j * (2 * j + 1) ** 2))
            - _rsum(1, p, lambda j: F(1, (2 * j + 1) ** 2 * (4 * j + 1)))
            + 4 * _alt_odd(n)
        )
        pi2 = F(1, 4) * (1 - F(1, 2) * _rsum(1, p, lambda j: F(1, j * (2 * j + 1))))
        return ClosedForm.of(
            "n odd", ONE=one, PI=-1, G_PI=1, PI2=pi2, PI2_LN2=F(-1, 4), ZETA3=F(-7, 4)
        )
    p = (n - 2) // 2
    one = (
        F(-10, 3)
        - F(1, 8) * _rsum(1, p, lambda j: (4 * j + 3) * (H(2 * j - 1) - 2 * H(4 * j - 1))
                          / ((j + 1) ** 2 * (2 * j + 1) ** 2))
        - _rsum(1, p, lambda j: F(4 * j**3 + j**2 - 4 * j - 2,
                                  (j + 1) ** 2 * (2 * j + 1) ** 2 * (4 * j + 3) * (4 * j + 1)))
        - 4 * _alt_odd(n)
    )
    pi2 = F(1, 4) * (F(-1, 2) - F(1, 2) * _rsum(1, p, lambda j: F(1, (j + 1) * (2 * j + 1))))
    return ClosedForm.of(
        "n even", ONE=one, PI=1, G_PI=-1, PI2=pi2, PI2_LN2=F(1, 4), ZETA3=F(7, 4)
    )


def _odd_prefix(m: int, d: int) -> F:
    return _rsum(1, m, lambda k: _rsum(0, k + d, lambda j: F(_sg(j + k + d),
                                                             (2 * j + 1) * (2 * k + 1) ** 2)))


def kernel_sum_odd_rhs(n: int, m: int = 0) -> ClosedForm:
    """Closed form of Sum_{k>=1} f(k, n) / (2k + 2m + 1)^2."""
    _check(m >= 0 and n >= m, f"odd kernel sum needs n >= m >= 0, got n={n}, m={m}")
    d = n - m
    base = _kernel_sum_odd_base(d)
    if m == 0:
        return base
    b_m = _rsum(1, m, lambda k: F(_sg(k + d - 1), (2 * k + 1) ** 2))
    shift = ClosedForm.of(ONE=-4 * _odd_prefix(m, d), PI=-b_m)
    return (base + shift).with_branch(f"m={m}, n-m={d}: {base.branch}")


# Odd denominators, alternating kernel


def _alt_prefix(m: int, top: int) -> F:
    return _rsum(1, m, lambda k: _rsum(0, k + top, lambda j: F(_sg(j),
                                                               (2 * j + 1) * (2 * k + 1) ** 2)))


def kernel_alt_sum_odd_rhs(n: int, m: int = 0) -> ClosedForm:
    """Closed form of Sum_{k>=1} (-1)^k f(k, n) / (2k + 2m + 1)^2.

    n - m = 2 falls under the general even branch.
    """
    _check(m >= 0 and n >= m, f"odd alternating sum needs n >= m >= 0, got n={n}, m={m}")
    d = n - m
    s2 = _rsum(1, m, lambda k: F(1, (2 * k + 1) ** 2))

    if d == 1:
        result = ClosedForm.of(
            "n-m=1", ONE=F(11, 3) + 4 * _alt_prefix(m, 1), PI=F(-3, 2) - s2,
            PI_LN2SQ=F(1, 4), PI3=F(1, 8), G=2, IM_LI3=-4,
        )
    elif d % 2:
        p = (d - 1) // 2
        one = (
            5
            - _rsum(1, p, lambda j: F(1, 4 * j * j * (4 * j + 1)))
            - 4 * _sg(d) * _alt_prefix(m, d)
            + F(1, 4) * _rsum(1, p, lambda k: _rsum(0, 2 * k, lambda j: F(
                _sg(j) * (8 * k * k + 4 * k + 1), k * k * (2 * j + 1) * (2 * k + 1) ** 2)))
            + 4 * _alt_odd(d)
        )
        g = 2 - _rsum(1, p, lambda j: F(1, j * (2 * j + 1)))
        pi = F(-3, 2) + _sg(d) * s2 - F(1, 2) * _rsum(1, p, lambda j: F(1, (2 * j + 1) ** 2))
        result = ClosedForm.of(
            "n-m odd", ONE=one, G=g, PI=pi, PI_LN2SQ=F(1, 4), PI3=F(1, 8), IM_LI3=-4
        )
    else:
        p = d // 2
        one = (
            -4
            + F(1, 4) * _rsum(1, p, lambda j: F(1, j * j * (4 * j - 1)))
            - 4 * _sg(d) * _alt_prefix(m, d)
            - F(1, 4) * _rsum(1, p, lambda k: _rsum(0, 2 * k - 2, lambda j: F(
                _sg(j) * (8 * k * k - 4 * k + 1), k * k * (2 * j + 1) * (2 * k - 1) ** 2)))
            - 4 * _alt_odd(d)
        )
        pi = 1 + _sg(d) * s2 + F(1, 2) * _rsum(1, p, lambda j: F(1, (2 * j - 1) ** 2))
        g = -_rsum(1, p, lambda j: F(1, j * (2 * j - 1)))
        result = ClosedForm.of(
            "n-m even", ONE=one, PI=pi, PI_LN2SQ=F(-1, 4), PI3=F(-1, 8), G=g, IM_LI3=4
        )
    return result.scale(_sg(m))


# Even denominators


def _kernel_sum_even_base(n: int) -> ClosedForm:
    if n == 1:
        return ClosedForm.of(
            "n=1", ONE=F(92, 27), PI2=F(-1, 9), LN2=F(-32, 9), PI_LN2SQ=F(1, 2),
            PI3=F(11, 48), G_LN2=4, IM_LI3=-8,
        )
    if n % 2:
        p = (n - 1) // 2
        one = (
            F(92, 27)
            + 16 * _rsum(1, p, lambda j: (2 * j + 1) * (2 * H(4 * j + 1) - H(2 * j)) / _d_odd(j))
            - 4 * _rsum(1, p, lambda j: F(1, (4 * j + 3) ** 3))
        )
        pi2 = -(F(1, 9) + F(1, 3) * _rsum(1, p, lambda j: F(1, (4 * j + 3) * (4 * j + 1))))
        ln2 = -(F(32, 9) + 32 * _rsum(1, p, lambda j: F(2 * j + 1, _d_odd(j))))
        return ClosedForm.of(
            "n odd", ONE=one, PI2=pi2, LN2=ln2, PI_LN2SQ=F(1, 2), PI3=F(11, 48),
            G_LN2=4, IM_LI3=-8,
        )
    q = (n - 2) // 2
    one = (
        -4
        + 32 * _rsum(0, q, lambda j: (j + 1) * (2 * H(4 * j + 3) - H(2 * j + 1)) / _d_even(j))
        - 4 * _rsum(0, q, lambda j: F(1, (4 * j + 5) ** 3))
    )
    pi2 = F(1, 6) - F(1, 3) * _rsum(0, q, lambda j: F(1, (4 * j + 5) * (4 * j + 3)))
    ln2 = 4 - 64 * _rsum(0, q, lambda j: F(j + 1, _d_even(j)))
    return ClosedForm.of(
        "n=0" if n == 0 else "n even", ONE=one, PI2=pi2, LN2=ln2, PI_LN2SQ=F(-1, 2),
        PI3=F(-11, 48), G_LN2=-4, IM_LI3=8,
    )


def _kernel_alt_sum_even_base(n: int) -> ClosedForm:
    if n == 1:
        return ClosedForm.of(
            "n=1", ONE=F(116, 27), PI=F(-10, 9), LN2=F(-16, 9), PI_LN2SQ=F(1, 4),
            PI2=F(1, 18), PI3=F(5, 48), G_LN2=2, IM_LI3=-4,
        )
    if n % 2:
        p = (n - 1) // 2
        one = (
            F(116, 27)
            + 8 * _rsum(1, p, lambda k: _rsum(0, 2 * k, lambda j: F(
                _sg(j) * (16 * k * k + 16 * k + 5), (2 * j + 1) * _d_odd(k))))
            - 4 * _rsum(1, p, lambda j: F(1, (4 * j + 3) ** 3))
        )
        pi = F(-10, 9) - _rsum(1, p, lambda j: F(2 * (16 * j * j + 16 * j + 5), _d_odd(j)))
        ln2 = -16 * (F(1, 9) + _rsum(1, p, lambda j: F(2 * j + 1, _d_odd(j))))
        pi2 = F(1, 18) + F(1, 6) * _rsum(1, p, lambda j: F(1, (4 * j + 3) * (4 * j + 1)))
        return ClosedForm.of(
            "n odd", ONE=one, PI=pi, LN2=ln2, PI_LN2SQ=F(1, 4), PI2=pi2, PI3=F(5, 48),
            G_LN2=2, IM_LI3=-4,
        )
    q = (n - 2) // 2
    one = (
        -4
        - 8 * _rsum(0, q, lambda k: _rsum(0, 2 * k + 1, lambda j: F(
            _sg(j) * (16 * k * k + 32 * k + 17), (2 * j + 1) * _d_even(k))))
        - 4 * _rsum(0, q, lambda j: F(1, (4 * j + 5) ** 3))
    )
    pi = 1 + _rsum(0, q, lambda j: F(2 * (16 * j * j + 32 * j + 17), _d_even(j)))
    ln2 = 2 * (1 - 16 * _rsum(0, q, lambda j: F(j + 1, _d_even(j))))
    pi2 = F(1, 6) * (F(-1, 2) + _rsum(0, q, lambda j: F(1, (4 * j + 5) * (4 * j + 3))))
    return ClosedForm.of(
        "n=0" if n == 0 else "n even", ONE=one, PI=pi, LN2=ln2, PI_LN2SQ=F(-1, 4),
        PI2=pi2, PI3=F(-5, 48), G_LN2=-2, IM_LI3=4,
    )


def _even_prefix(m: int, d: int, alternating: bool) -> F:
    return _rsum(1, m, lambda k: _rsum(0, k + d, lambda j: F(
        _sg(j + d) * (_sg(k) if alternating else 1), k * k * (2 * j + 1))))


def kernel_sum_even_rhs(n: int, m: int = 0) -> ClosedForm:
    """Closed form of Sum_{k>=1} f(k, n) / (2k + 2m)^2."""
    _check(m >= 0 and n >= m, f"even kernel sum needs n >= m >= 0, got n={n}, m={m}")
    d = n - m
    base = _kernel_sum_even_base(d)
    if m == 0:
        return base
    alt4 = _rsum(1, m, lambda k: F(_sg(k), 4 * k * k))
    shift = ClosedForm.of(ONE=-_even_prefix(m, d, True), PI=_sg(d) * alt4)
    return (base + shift).with_branch(f"m={m}, n-m={d}: {base.branch}")


def kernel_alt_sum_even_rhs(n: int, m: int = 0) -> ClosedForm:
    """Closed form of Sum_{k>=1} (-1)^k f(k, n) / (2k + 2m)^2."""
    _check(m >= 0 and n >= m, f"even alternating sum needs n >= m >= 0, got n={n}, m={m}")
    d = n - m
    base = _kernel_alt_sum_even_base(d)
    if m == 0:
        return base
    s4 = _rsum(1, m, lambda k: F(1, 4 * k * k))
    shift = ClosedForm.of(ONE=-_even_prefix(m, d, False), PI=_sg(d) * s4)
    return (base + shift).scale(_sg(m)).with_branch(f"m={m}, n-m={d}: {base.branch}")


# Weighted sums: closed forms are polynomials in pi


def _weighted_odd_parts(p: int) -> tuple[F, F, F]:
    one = (
        8 * _rsum(1, p, lambda j: (2 * j + 1) * (2 * H(4 * j + 1) - H(2 * j)) / _d_odd(j))
        + 2 * _rsum(1, p, lambda j: F(1, (4 * j + 3) ** 3))
        - 8 * _rsum(1, p, lambda k: _rsum(0, 2 * k, lambda j: F(
            _sg(j) * (16 * k * k + 16 * k + 5), (2 * j + 1) * _d_odd(k))))
    )
    pi = _rsum(1, p, lambda j: F(2 * (16 * j * j + 16 * j + 5), _d_odd(j)))
    pi2 = _rsum(1, p, lambda j: F(1, (4 * j + 3) * (4 * j + 1)))
    return one, pi, pi2


def _weighted_even_parts(q: int) -> tuple[F, F, F]:
    # the harmonic sum starts at j = 0
    one = (
        16 * _rsum(0, q, lambda j: (j + 1) * (2 * H(4 * j + 3) - H(2 * j + 1)) / _d_even(j))
        + 2 * _rsum(0, q, lambda j: F(1, (4 * j + 5) ** 3))
        + 8 * _rsum(0, q, lambda k: _rsum(0, 2 * k + 1, lambda j: F(
            _sg(j) * (16 * k * k + 32 * k + 17), (2 * j + 1) * _d_even(k))))
    )
    pi = _rsum(0, q, lambda j: F(2 * (16 * j * j + 32 * j + 17), _d_even(j)))
    pi2 = _rsum(0, q, lambda j: F(1, (4 * j + 5) * (4 * j + 3)))
    return one, pi, pi2


def _weighted(n: int, prefix_len: int, flip: int) -> ClosedForm:
    """Weighted closed form with ``prefix_len`` leading terms removed.

    ``flip`` is +1 for the 1/2 - (-1)^k weight and -1 for 1/2 + (-1)^k.
    """
    d = n - prefix_len

    def c(k: int) -> F:
        return F(_sg(k), 2) - 1

    def prefix(top: int, sign_n: bool) -> F:
        return _rsum(1, prefix_len, lambda k: _rsum(0, k + top, lambda j: F(
            _sg(j + n) if sign_n else _sg(j)) * c(k) / (k * k * (2 * j + 1))))

    pi_prefix = _rsum(1, prefix_len, lambda k: c(k) / (4 * k * k))

    if d == 0:
        return ClosedForm.of(
            "d=0", ONE=2 - prefix(0, False), PI=-1 + pi_prefix, PI2=F(1, 6), PI3=F(-1, 96)
        )
    if d == 1:
        return ClosedForm.of(
            "d=1", ONE=F(-70, 27) + prefix(1, False), PI=F(10, 9) - pi_prefix,
            PI2=F(-1, 9), PI3=F(1, 96),
        )
    shifted = flip * prefix(d, True)
    shifted_pi = flip * _sg(n) * pi_prefix
    if d % 2:
        one, pi, pi2 = _weighted_odd_parts((d - 1) // 2)
        return ClosedForm.of(
            "d odd", ONE=F(-70, 27) + one - shifted, PI=F(10, 9) + pi + shifted_pi,
            PI2=F(-1, 3) * (F(1, 3) + pi2), PI3=F(1, 96),
        )
    one, pi, pi2 = _weighted_even_parts((d - 2) // 2)
    return ClosedForm.of(
        "d even", ONE=2 + one - shifted, PI=-(1 + pi) + shifted_pi,
        PI2=F(1, 3) * (F(1, 2) - pi2), PI3=F(-1, 96),
    )


def weighted_rhs(n: int, m: int, weight: WeightKind | str) -> ClosedForm:
    """Closed form of Sum_{k>=1} (1/2 -+ (-1)^k) f(k, n) / (2k + alpha)^2.

    half_minus: alpha = 4m with n >= 2m; half_plus: alpha = 4m - 2 with m >= 1
    and n >= 2m - 1.
    """
    weight = WeightKind(weight)
    if weight is WeightKind.HALF_MINUS:
        _check(m >= 0 and n >= 2 * m, f"half_minus weight needs n >= 2m >= 0, got n={n}, m={m}")
        return _weighted(n, 2 * m, 1)
    _check(m >= 1 and n >= 2 * m - 1, f"half_plus weight needs n >= 2m-1 >= 1, got n={n}, m={m}")
    return _weighted(n, 2 * m - 1, -1)


# Stride-one sums


def stride_one_rhs(n: int) -> ClosedForm:
    """Closed form of Sum_{k>=1} [psi((k+2n+5)/4) - psi((k+2n+3)/4)] / k^2."""
    _check(n >= 0, f"stride-one sum needs n >= 0, got {n}")
    if n == 1:
        return ClosedForm.of(
            "n=1", ONE=F(86, 27), PI2=F(-4, 9), PI3=F(1, 6), G_LN2=2, PI_LN2SQ=F(1, 4),
            IM_LI3=-4,
        )
    if n % 2:
        p = (n - 1) // 2
        one = (
            F(86, 27)
            - 2 * _rsum(1, p, lambda j: F(8 * j + 5, (2 * j + 1) * (4 * j + 3) ** 3))
            + 32 * _rsum(1, p, lambda j: (2 * j + 1) * H(4 * j + 1) / _d_odd(j))
        )
        pi2 = -(F(4, 9) + F(4, 3) * _rsum(1, p, lambda j: F(1, (4 * j + 3) * (4 * j + 1))))
        return ClosedForm.of(
            "n odd", ONE=one, PI2=pi2, PI3=F(1, 6), G_LN2=2, PI_LN2SQ=F(1, 4), IM_LI3=-4
        )
    q = (n - 2) // 2
    one = (
        -4
        - _rsum(0, q, lambda j: F(8 * j + 9, (j + 1) * (4 * j + 5) ** 3))
        + 64 * _rsum(0, q, lambda j: (j + 1) * H(4 * j + 3) / _d_even(j))
    )
    pi2 = F(2, 3) - F(4, 3) * _rsum(0, q, lambda j: F(1, (4 * j + 5) * (4 * j + 3)))
    return ClosedForm.of(
        "n=0" if n == 0 else "n even", ONE=one, PI2=pi2, PI3=F(-1, 6), G_LN2=-2,
        PI_LN2SQ=F(-1, 4), IM_LI3=4,
    )


def weighted_stride_one_rhs(n: int) -> ClosedForm:
    """Closed form of Sum_{k>=1} [f(k, n)/8 - psi((k+2n+5)/4) + psi((k+2n+3)/4)] / k^2.

    The result only involves 1, ln 2, pi^2 and pi^3.
    """
    _check(n >= 0, f"stride-one weighted sum needs n >= 0, got {n}")
    if n == 0:
        return ClosedForm.of("n=0", ONE=2, LN2=2, PI2=F(-7, 12), PI3=F(5, 96))
    if n == 1:
        return ClosedForm.of("n=1", ONE=F(-40, 27), LN2=F(-16, 9), PI2=F(7, 18), PI3=F(-5, 96))
    if n % 2:
        p = (n - 1) // 2
        one = (
            F(-40, 27)
            - 8 * _rsum(1, p, lambda j: (2 * j + 1) * (2 * H(4 * j + 1) + H(2 * j)) / _d_odd(j))
            + 4 * _rsum(1, p, lambda j: F(3 * j + 2, (2 * j + 1) * (4 * j + 3) ** 3))
        )
        pi2 = F(7, 2) * (F(1, 9) + F(1, 3) * _rsum(1, p, lambda j: F(1, (4 * j + 3) * (4 * j + 1))))
        ln2 = -16 * (F(1, 9) + _rsum(1, p, lambda j: F(2 * j + 1, _d_odd(j))))
        return ClosedForm.of("n odd", ONE=one, PI2=pi2, LN2=ln2, PI3=F(-5, 96))
    q = (n - 2) // 2
    one = (
        2
        - 16 * _rsum(0, q, lambda j: (j + 1) * (2 * H(4 * j + 3) + H(2 * j + 1)) / _d_even(j))
        + _rsum(0, q, lambda j: F(6 * j + 7, (j + 1) * (4 * j + 5) ** 3))
    )
    pi2 = F(-7, 2) * (F(1, 6) - F(1, 3) * _rsum(0, q, lambda j: F(1, (4 * j + 5) * (4 * j + 3))))
    ln2 = 2 * (1 - 16 * _rsum(0, q, lambda j: F(j + 1, _d_even(j))))
    return ClosedForm.of("n even", ONE=one, PI2=pi2, LN2=ln2, PI3=F(5, 96))
