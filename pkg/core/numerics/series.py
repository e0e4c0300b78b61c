"""Infinite-series summation engines and the digamma-kernel sums.

Three engines are available:

    sum_alternating   Cohen-Rodriguez Villegas-Zagier acceleration of a
                      strictly alternating series with decreasing magnitudes,
                      checked against the bracket of classical partial sums
    sum_em_tail       direct head plus an Euler-Maclaurin tail for smooth
                      terms with rational decay
    sum_direct        plain summation of geometrically decaying terms

The kernel sums Sum f(k, n) / (2k + alpha)^2 and their alternating,
weighted and stride-one relatives are built on top of them.
"""

from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import cache

from core.exceptions import (
    BracketingError,
    BudgetExceededError,
    SeriesConvergenceError,
    SeriesError,
)
from core.numerics.bernoulli import bernoulli
from core.numerics.quadrature import IntegralSpec, integrate
from core.numerics.specfun import (
    digamma,
    f_finite_value,
    f_psi,
    harmonic,
    kernel_psi_real,
)
from core.numerics.xprec import CTX, XComplex, XReal, to_xreal, xreal
from core.observability.logging_config import get_logger

logger = get_logger(__name__)

DEFAULT_BUDGET = 100_000
ACCEL_START = 16
EM_START = 128
STENCIL_RADIUS = 8
EM_ORDER = 6  # Bernoulli corrections B_2 .. B_12
MAX_DIRECT_TERMS = 10_000_000


class SignPattern(StrEnum):
    ALL_POSITIVE = "all_positive"
    STRICTLY_ALTERNATING = "strictly_alternating"
    GENERAL = "general"


class TailClass(StrEnum):
    SMOOTH_RATIONAL_DECAY = "smooth_rational_decay"
    ALTERNATING_DECREASING = "alternating_decreasing"
    GEOMETRIC = "geometric"


class SumMethod(StrEnum):
    DIRECT = "direct"
    EM_TAIL = "em_tail"
    ACCELERATED = "accelerated"
    COMBINED = "combined"


class KernelForm(StrEnum):
    """How f(k, n) is evaluated at integer k."""

    PSI = "psi"
    FINITE = "finite"


class WeightKind(StrEnum):
    """Weights 1/2 - (-1)^k (denominator 2k+4m) and 1/2 + (-1)^k (2k+4m-2)."""

    HALF_MINUS = "half_minus"
    HALF_PLUS = "half_plus"


@dataclass(frozen=True)
class SeriesSpec:
    """Sum_{k >= start_index} term(k).

    For strictly alternating series ``term`` returns the magnitude a_k and the
    summand is (-1)^k a_k. ``smooth`` is a real-argument extension of ``term``
    used by the Euler-Maclaurin tail; ``ratio_bound`` bounds |t_{k+1}/t_k| for
    geometric series.
    """

    name: str
    term: Callable[[int], XReal]
    sign_pattern: SignPattern
    tail_class: TailClass
    start_index: int = 1
    smooth: Callable[[XReal], XReal] | None = None
    ratio_bound: XReal | None = None


@dataclass(frozen=True)
class SumResult:
    value: XReal
    terms_used: int
    tail_estimate: XReal
    method: SumMethod
    # classical partial sums around the accelerated value
    bracket: tuple[XReal, XReal] | None = None

    def __add__(self, other: "SumResult") -> "SumResult":
        return combine((1, self), (1, other))


def combine(*parts: tuple[object, SumResult]) -> SumResult:
    """Linear combination sum c_i * r_i of several sums."""
    value = CTX.zero
    tail = CTX.zero
    terms = 0
    for coeff, part in parts:
        c = xreal(coeff)
        value += c * part.value
        tail += abs(c) * part.tail_estimate
        terms += part.terms_used
    return SumResult(value, terms, tail, SumMethod.COMBINED)


class _TermCache:
    """Lazily evaluated term list t(start), t(start+1), ..."""

    def __init__(self, spec: SeriesSpec):
        self._spec = spec
        self._values: list[XReal] = []

    def __getitem__(self, j: int) -> XReal:
        while len(self._values) <= j:
            self._values.append(xreal(self._spec.term(self._spec.start_index + len(self._values))))
        return self._values[j]

    def __len__(self) -> int:
        return len(self._values)


def _crvz(terms: _TermCache, n: int) -> XReal:
    # Sum_{k<inf} (-1)^k a_k accelerated with n terms
    d = (3 + CTX.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b = CTX.mpf(-1)
    c = -d
    total = CTX.zero
    for k in range(n):
        c = b - c
        total += c * terms[k]
        b = b * 2 * (k + n) * (k - n) / ((2 * k + 1) * (k + 1))
    return total / d


def sum_alternating(spec: SeriesSpec, eps, budget: int = DEFAULT_BUDGET) -> SumResult:
    """Accelerate a strictly alternating series.

    The accelerated value is accepted once two successive term counts agree
    to eps/4 and the value sits between the last two classical partial sums.

    Raises:
        BudgetExceededError: Term count would pass ``budget``
        BracketingError: Accelerated value left the partial-sum bracket
    """
    if spec.sign_pattern is not SignPattern.STRICTLY_ALTERNATING:
        raise SeriesError(f"{spec.name}: sum_alternating needs an alternating series")
    eps = xreal(eps)
    sign = -1 if spec.start_index % 2 else 1
    terms = _TermCache(spec)

    n = ACCEL_START
    previous = None
    while True:
        if n > budget:
            raise BudgetExceededError(
                f"{spec.name}: acceleration needs more than {budget} terms",
                best_estimate=sign * previous if previous is not None else None,
                terms_used=len(terms),
            )
        value = _crvz(terms, n)
        if previous is not None and abs(value - previous) <= eps / 4:
            break
        previous = value
        n *= 2

    partial = CTX.fsum((-1) ** j * terms[j] for j in range(n - 1))
    last = partial + (-1) ** (n - 1) * terms[n - 1]
    low, high = min(partial, last), max(partial, last)
    if not low - eps <= value <= high + eps:
        raise BracketingError(
            f"{spec.name}: accelerated value {CTX.nstr(value, 20)} outside "
            f"[{CTX.nstr(low, 20)}, {CTX.nstr(high, 20)}]"
        )

    logger.debug(f"{spec.name}: accelerated with {n} terms")
    return SumResult(
        value=sign * value,
        terms_used=n,
        tail_estimate=abs(value - previous),
        method=SumMethod.ACCELERATED,
        bracket=(sign * low, sign * high) if sign > 0 else (-high, -low),
    )


@cache
def _fornberg_weights(order: int, radius: int = STENCIL_RADIUS) -> tuple[Fraction, ...]:
    """Exact central-difference weights for the order-th derivative on -r..r."""
    nodes = list(range(-radius, radius + 1))
    size = len(nodes)
    # delta[m][n][v]: weight of node v for derivative m using the first n+1 nodes
    delta = [[[Fraction(0)] * size for _ in range(size)] for _ in range(order + 1)]
    delta[0][0][0] = Fraction(1)
    c1 = Fraction(1)
    for n in range(1, size):
        c2 = Fraction(1)
        for v in range(n):
            c3 = Fraction(nodes[n] - nodes[v])
            c2 *= c3
            for m in range(min(n, order), -1, -1):
                prev = delta[m - 1][n - 1][v] if m else Fraction(0)
                delta[m][n][v] = (nodes[n] * delta[m][n - 1][v] - m * prev) / c3
        for m in range(min(n, order), -1, -1):
            prev = delta[m - 1][n - 1][n - 1] if m else Fraction(0)
            delta[m][n][n] = c1 / c2 * (m * prev - nodes[n - 1] * delta[m][n - 1][n - 1])
        c1 = c2
    return tuple(delta[order][size - 1])


def _em_coefficients() -> list[tuple[int, XReal]]:
    coeffs = []
    factorial = 1
    for j in range(1, EM_ORDER + 1):
        factorial *= (2 * j - 1) * (2 * j)
        coeffs.append((2 * j - 1, to_xreal(bernoulli(2 * j) / factorial)))
    return coeffs


_EM_COEFFS = _em_coefficients()


def sum_em_tail(spec: SeriesSpec, eps, budget: int = DEFAULT_BUDGET) -> SumResult:
    """Direct head to N plus an Euler-Maclaurin tail from N.

    tail = int_N^inf f + f(N)/2 - sum_j B_2j/(2j)! f^(2j-1)(N), with the odd
    derivatives taken from exact 17-point difference stencils and the
    integral mapped onto (0, 1] by x = N/u. N doubles until the last
    correction drops below eps/2.

    Raises:
        BudgetExceededError: N would pass ``budget``
    """
    if spec.smooth is None:
        raise SeriesError(f"{spec.name}: Euler-Maclaurin tail needs a smooth extension")
    if spec.sign_pattern is SignPattern.STRICTLY_ALTERNATING:
        raise SeriesError(f"{spec.name}: use sum_alternating for alternating series")
    eps = xreal(eps)
    smooth = spec.smooth
    terms = _TermCache(spec)

    cutoff = max(EM_START, spec.start_index + 2 * STENCIL_RADIUS)
    while True:
        n_head = cutoff - spec.start_index
        if n_head > budget:
            raise BudgetExceededError(
                f"{spec.name}: Euler-Maclaurin head needs more than {budget} terms",
                best_estimate=None,
                terms_used=len(terms),
            )
        head = CTX.fsum(terms[j] for j in range(n_head))
        big_n = CTX.mpf(cutoff)

        integral = integrate(
            IntegralSpec(
                id=f"{spec.name}:tail",
                integrand=lambda u, _ua, _bu, big_n=big_n: smooth(big_n / u) * big_n / (u * u),
                a=CTX.zero,
                b=CTX.one,
            ),
            eps / 8,
        )

        samples = [smooth(big_n + i) for i in range(-STENCIL_RADIUS, STENCIL_RADIUS + 1)]
        correction = CTX.zero
        last = CTX.zero
        for order, coeff in _EM_COEFFS:
            weights = _fornberg_weights(order)
            derivative = CTX.fsum(to_xreal(w) * s for w, s in zip(weights, samples) if w)
            last = coeff * derivative
            correction += last

        tail_estimate = abs(last) + integral.error_estimate
        if tail_estimate <= eps / 2:
            value = head + integral.value + smooth(big_n) / 2 - correction
            logger.debug(
                f"{spec.name}: Euler-Maclaurin with N={cutoff}, "
                f"tail estimate {CTX.nstr(tail_estimate, 3)}"
            )
            return SumResult(value, n_head, tail_estimate, SumMethod.EM_TAIL)
        cutoff *= 2


def sum_direct(spec: SeriesSpec, eps, budget: int = MAX_DIRECT_TERMS) -> SumResult:
    """Sum a geometrically decaying series until the ratio-bounded tail is below eps/2."""
    if spec.ratio_bound is None or not 0 <= spec.ratio_bound < 1:
        raise SeriesError(f"{spec.name}: direct summation needs a ratio bound in [0, 1)")
    eps = xreal(eps)
    rho = xreal(spec.ratio_bound)
    factor = rho / (1 - rho)

    total = CTX.zero
    k = spec.start_index
    count = 0
    while True:
        term = xreal(spec.term(k))
        total += term
        count += 1
        tail = abs(term) * factor
        if tail <= eps / 2:
            return SumResult(total, count, tail, SumMethod.DIRECT)
        if count >= budget:
            raise BudgetExceededError(
                f"{spec.name}: direct sum exceeded {budget} terms",
                best_estimate=total,
                terms_used=count,
            )
        k += 1


def summarize(spec: SeriesSpec, eps, budget: int = DEFAULT_BUDGET) -> SumResult:
    """Pick the engine matching the declared tail class."""
    match spec.tail_class:
        case TailClass.ALTERNATING_DECREASING:
            return sum_alternating(spec, eps, budget)
        case TailClass.SMOOTH_RATIONAL_DECAY:
            return sum_em_tail(spec, eps, budget)
        case TailClass.GEOMETRIC:
            return sum_direct(spec, eps)
    raise SeriesError(f"{spec.name}: unknown tail class {spec.tail_class}")


# Digamma-kernel sums


def _check_kernel_args(n: int, alpha: int) -> None:
    if n < 0 or alpha < 0:
        raise SeriesError(f"kernel sums need n, alpha >= 0, got n={n}, alpha={alpha}")


def _kernel_term(n: int, alpha: int, kernel: KernelForm) -> Callable[[int], XReal]:
    fk = f_psi if kernel is KernelForm.PSI else f_finite_value

    def term(k: int) -> XReal:
        return fk(k, n) / CTX.mpf(2 * k + alpha) ** 2

    return term


def kernel_sum(
    n: int,
    alpha: int,
    eps,
    kernel: KernelForm = KernelForm.PSI,
    budget: int = DEFAULT_BUDGET,
) -> SumResult:
    """Sum_{k>=1} f(k, n) / (2k + alpha)^2 (positive terms, O(k^-3) decay)."""
    _check_kernel_args(n, alpha)
    spec = SeriesSpec(
        name=f"kernel_sum({n},{alpha})",
        term=_kernel_term(n, alpha, KernelForm(kernel)),
        sign_pattern=SignPattern.ALL_POSITIVE,
        tail_class=TailClass.SMOOTH_RATIONAL_DECAY,
        smooth=lambda x: kernel_psi_real(x, n) / (2 * x + alpha) ** 2,
    )
    return sum_em_tail(spec, eps, budget)


def kernel_alt_sum(
    n: int,
    alpha: int,
    eps,
    kernel: KernelForm = KernelForm.PSI,
    budget: int = DEFAULT_BUDGET,
) -> SumResult:
    """Sum_{k>=1} (-1)^k f(k, n) / (2k + alpha)^2."""
    _check_kernel_args(n, alpha)
    spec = SeriesSpec(
        name=f"kernel_alt_sum({n},{alpha})",
        term=_kernel_term(n, alpha, KernelForm(kernel)),
        sign_pattern=SignPattern.STRICTLY_ALTERNATING,
        tail_class=TailClass.ALTERNATING_DECREASING,
    )
    return sum_alternating(spec, eps, budget)


def weighted_kernel_sum(
    n: int, m: int, weight: WeightKind | str, eps, budget: int = DEFAULT_BUDGET
) -> SumResult:
    """Sum_{k>=1} (1/2 -+ (-1)^k) f(k, n) / (2k + alpha)^2.

    HALF_MINUS uses alpha = 4m (m >= 0), HALF_PLUS uses alpha = 4m - 2 (m >= 1).
    """
    weight = WeightKind(weight)
    if weight is WeightKind.HALF_MINUS:
        if m < 0:
            raise SeriesError(f"half_minus weight needs m >= 0, got {m}")
        alpha, sign = 4 * m, -1
    else:
        if m < 1:
            raise SeriesError(f"half_plus weight needs m >= 1, got {m}")
        alpha, sign = 4 * m - 2, 1
    plain = kernel_sum(n, alpha, eps / 2, budget=budget)
    alternating = kernel_alt_sum(n, alpha, eps / 2, budget=budget)
    return combine((Fraction(1, 2), plain), (sign, alternating))


def stride_one_sum(n: int, eps, budget: int = DEFAULT_BUDGET) -> SumResult:
    """Sum_{k>=1} [psi((k+2n+5)/4) - psi((k+2n+3)/4)] / k^2.

    Every term is positive. Even k = 2j gives f(j, n)/(4j^2), which is the
    kernel sum at alpha = 0; odd k = 2j - 1 is summed on its own.
    """
    if n < 0:
        raise SeriesError(f"stride-one sum needs n >= 0, got {n}")
    even = kernel_sum(n, 0, eps / 2, budget=budget)

    def odd_term(j: int) -> XReal:
        return (
            digamma(Fraction(j + n + 2, 2)) - digamma(Fraction(j + n + 1, 2))
        ) / CTX.mpf(2 * j - 1) ** 2

    def odd_smooth(x: XReal) -> XReal:
        return (digamma((x + n + 2) / 2) - digamma((x + n + 1) / 2)) / (2 * x - 1) ** 2

    odd = sum_em_tail(
        SeriesSpec(
            name=f"stride_one_odd({n})",
            term=odd_term,
            sign_pattern=SignPattern.ALL_POSITIVE,
            tail_class=TailClass.SMOOTH_RATIONAL_DECAY,
            smooth=odd_smooth,
        ),
        eps / 2,
        budget,
    )
    return combine((1, even), (1, odd))


# Fourier series of ln^2(2 cos z)


def _harmonic_ratio(k: int) -> Fraction:
    return harmonic(k) / (k + 1)


def _euler_tail(v: XComplex, start: int, order: int) -> tuple[XComplex, XReal]:
    """Sum_{k>=start} v^k c_k with c_k = H_k/(k+1) for |v| = 1, v != 1.

    Uses Sum v^k c_k = v^M/(1-v) Sum_j (v/(1-v))^j Delta^j c_M with exact
    forward differences.
    """
    row = [_harmonic_ratio(start + i) for i in range(order + 1)]
    prefactor = v**start / (1 - v)
    ratio = v / (1 - v)
    total = CTX.mpc(0)
    power = CTX.mpc(1)
    last = CTX.zero
    for _ in range(order + 1):
        last = prefactor * power * to_xreal(row[0])
        total += last
        row = [b - a for a, b in zip(row, row[1:])]
        power *= ratio
        if not row:
            break
    return total, abs(last)


def fourier_ln2cos_check(z, n_terms: int, eps) -> XReal:
    """Residual of ln^2(2cos z) = z^2 + 2 Sum_{k>=1} (-1)^(k-1) H_k cos(2(k+1)z)/(k+1).

    The first ``n_terms`` terms are summed directly and the oscillatory tail
    is accelerated by repeated summation by parts.

    Raises:
        SeriesError: |z| >= pi/2 or n_terms < 1
        SeriesConvergenceError: Tail acceleration did not reach eps
    """
    z = xreal(z)
    if abs(z) >= CTX.pi / 2:
        raise SeriesError(f"ln(2cos z) series needs |z| < pi/2, got {CTX.nstr(z, 10)}")
    if n_terms < 1:
        raise SeriesError("n_terms must be positive")
    eps = xreal(eps)

    phase = CTX.expj(2 * z)
    v = -phase
    head = CTX.mpc(0)
    power = CTX.mpc(1)
    for k in range(1, n_terms + 1):
        power *= v
        head += power * to_xreal(_harmonic_ratio(k))

    tail, last = _euler_tail(v, n_terms + 1, order=24)
    if last > eps:
        raise SeriesConvergenceError(
            f"ln(2cos z) tail did not converge (last correction {CTX.nstr(last, 3)})",
            best_estimate=None,
            terms_used=n_terms,
        )
    series = (-phase * (head + tail)).real
    lhs = CTX.ln(2 * CTX.cos(z)) ** 2
    return abs(lhs - z * z - 2 * series)


def weighted_stride_one_sum(n: int, eps, budget: int = DEFAULT_BUDGET) -> SumResult:
    """Half the alpha = 0 kernel sum minus the stride-one sum."""
    half_kernel = kernel_sum(n, 0, eps / 2, budget=budget)
    stride = stride_one_sum(n, eps / 2, budget=budget)
    return combine((Fraction(1, 2), half_kernel), (-1, stride))
