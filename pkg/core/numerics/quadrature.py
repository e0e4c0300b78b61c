"""Tanh-sinh (double exponential) quadrature on finite intervals.

Integrands receive ``(x, x - a, b - x)`` so code near an endpoint can use the
exact distance instead of forming ``1 - x`` by subtraction. Nodes are kept as
the pair of distances to both ends, which lets abscissae approach an endpoint
far closer than working precision could resolve ``x`` itself.
"""

import threading
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import StrEnum

from core.exceptions import (
    IntegrandEvaluationError,
    QuadratureConvergenceError,
    VerificationLabError,
)
from core.numerics.xprec import CTX, WORKING_DIGITS, XReal, xreal
from core.observability.logging_config import get_logger

logger = get_logger(__name__)

BASE_LEVEL = 3
MAX_LEVEL = 12
# nodes whose unit weight falls below this are dropped
WEIGHT_FLOOR = CTX.mpf(10) ** (-(WORKING_DIGITS + 12))

Integrand = Callable[[XReal, XReal, XReal], XReal]


class Singularity(StrEnum):
    NONE = "none"
    LOG_AT_A = "log_at_a"
    LOG_AT_B = "log_at_b"
    LOG_BOTH = "log_both"


@dataclass(frozen=True)
class IntegralSpec:
    """Integrand on (a, b) with its endpoint behaviour."""

    id: str
    integrand: Integrand
    a: XReal
    b: XReal
    singularity: Singularity = Singularity.NONE
    description: str = ""


@dataclass(frozen=True)
class QuadResult:
    value: XReal
    levels_used: int
    error_estimate: XReal
    # (level, value, |change from previous level|)
    history: tuple[tuple[int, XReal, XReal], ...] = field(default=())


@dataclass(frozen=True)
class _Node:
    near_a: XReal  # distance to a on the unit interval
    near_b: XReal  # distance to b on the unit interval
    weight: XReal  # dx/dt on the unit interval


_tables: dict[int, tuple[_Node, ...]] = {}
_tables_lock = threading.Lock()


def _node(t: XReal) -> _Node | None:
    u = CTX.pi / 2 * CTX.sinh(t)
    e = CTX.exp(-2 * abs(u))
    small = e / (1 + e)  # 1/(1 + e^{2|u|})
    large = 1 / (1 + e)
    weight = CTX.pi / 4 * CTX.cosh(t) * 4 * e / (1 + e) ** 2
    if weight < WEIGHT_FLOOR or small == 0:
        return None
    if u >= 0:
        return _Node(near_a=large, near_b=small, weight=weight)
    return _Node(near_a=small, near_b=large, weight=weight)


def _level_nodes(level: int) -> tuple[_Node, ...]:
    """Nodes first introduced at ``level`` (all of them at the base level)."""
    nodes = _tables.get(level)
    if nodes is not None:
        return nodes
    with _tables_lock:
        if level in _tables:
            return _tables[level]
        h = CTX.mpf(2) ** (-level)
        built: list[_Node] = []
        k = 0 if level == BASE_LEVEL else 1
        step = 1 if level == BASE_LEVEL else 2
        while True:
            t = k * h
            node = _node(t)
            if node is None:
                break
            built.append(node)
            if k:
                mirrored = _node(-t)
                if mirrored is not None:
                    built.append(mirrored)
            k += step
        _tables[level] = tuple(built)
        logger.debug(f"Built tanh-sinh level {level}: {len(built)} nodes")
        return _tables[level]


def _evaluate(spec: IntegralSpec, x: XReal, xa: XReal, bx: XReal) -> XReal:
    try:
        return spec.integrand(x, xa, bx)
    except (VerificationLabError, ValueError, ZeroDivisionError, ArithmeticError) as e:
        raise IntegrandEvaluationError(
            f"{spec.id}: integrand failed at x={CTX.nstr(x, 20)}: {e}", abscissa=x
        ) from e


def _level_sum(spec: IntegralSpec, level: int, lo: XReal, hi: XReal) -> XReal:
    width = hi - lo
    offset_a = lo - spec.a
    offset_b = spec.b - hi
    terms = []
    for node in _level_nodes(level):
        dist_lo = width * node.near_a
        dist_hi = width * node.near_b
        x = lo + dist_lo if node.near_a <= node.near_b else hi - dist_hi
        terms.append(node.weight * _evaluate(spec, x, offset_a + dist_lo, offset_b + dist_hi))
    return width * CTX.fsum(terms)


def integrate(
    spec: IntegralSpec,
    eps,
    max_level: int = MAX_LEVEL,
    interval: tuple | None = None,
) -> QuadResult:
    """Integrate ``spec`` to absolute accuracy ``eps`` by level doubling.

    Args:
        spec: Integrand and its declared interval
        eps: Requested absolute accuracy
        max_level: Finest level to try (step 2^-max_level)
        interval: Optional sub-interval of (a, b); distances passed to the
            integrand stay relative to the declared endpoints

    Raises:
        QuadratureConvergenceError: Successive levels still differ by more
            than eps/4 at max_level
        IntegrandEvaluationError: The integrand failed at some abscissa
    """
    eps = xreal(eps)
    lo, hi = (spec.a, spec.b) if interval is None else (xreal(interval[0]), xreal(interval[1]))
    max_level = min(max_level, MAX_LEVEL)

    h = CTX.mpf(2) ** (-BASE_LEVEL)
    raw = _level_sum(spec, BASE_LEVEL, lo, hi)
    value = h * raw
    history = [(BASE_LEVEL, value, CTX.inf)]

    for level in range(BASE_LEVEL + 1, max_level + 1):
        h /= 2
        raw += _level_sum(spec, level, lo, hi)
        new_value = h * raw
        delta = abs(new_value - value)
        value = new_value
        history.append((level, value, delta))
        logger.debug(f"{spec.id}: level {level} delta {CTX.nstr(delta, 3)}")
        if delta <= eps / 4:
            return QuadResult(value, level, delta, tuple(history))

    raise QuadratureConvergenceError(
        f"{spec.id}: no convergence by level {max_level} "
        f"(last change {CTX.nstr(history[-1][2], 3)})",
        best_estimate=value,
        levels_used=max_level,
    )


def integrate_function(
    func: Callable[[XReal], XReal], a, b, eps, max_level: int = MAX_LEVEL, name: str = "anonymous"
) -> QuadResult:
    """Integrate a plain function of x over (a, b)."""
    spec = IntegralSpec(
        id=name, integrand=lambda x, _xa, _bx: func(x), a=xreal(a), b=xreal(b)
    )
    return integrate(spec, eps, max_level)


# Composite Gauss-Legendre, an independent rule for cross-checking tanh-sinh

GL_DEGREE = 20
GL_GRADING = 40  # endpoint gap is (b - a) / 2^GL_GRADING

_gl_nodes: dict[int, tuple[tuple[XReal, XReal], ...]] = {}
_gl_lock = threading.Lock()


def gauss_legendre_nodes(degree: int = GL_DEGREE) -> tuple[tuple[XReal, XReal], ...]:
    """(node, weight) pairs on [-1, 1], by Newton iteration on P_degree."""
    nodes = _gl_nodes.get(degree)
    if nodes is not None:
        return nodes
    with _gl_lock:
        if degree in _gl_nodes:
            return _gl_nodes[degree]
        tol = CTX.mpf(10) ** (-WORKING_DIGITS)
        built = []
        for i in range(1, degree + 1):
            x = CTX.cos(CTX.pi * (i - CTX.mpf(0.25)) / (degree + CTX.mpf(0.5)))
            for _ in range(100):
                p_prev, p = CTX.one, x
                for k in range(2, degree + 1):
                    p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
                dp = degree * (x * p - p_prev) / (x * x - 1)
                step = p / dp
                x -= step
                if abs(step) < tol:
                    break
            built.append((x, 2 / ((1 - x * x) * dp * dp)))
        _gl_nodes[degree] = tuple(built)
        return _gl_nodes[degree]


def _gl_panel(spec: IntegralSpec, width: XReal, lo: XReal, hi: XReal, from_b: bool,
              degree: int) -> XReal:
    # lo/hi are distances from a (or from b when from_b)
    half, centre = (hi - lo) / 2, (hi + lo) / 2
    terms = []
    for s, weight in gauss_legendre_nodes(degree):
        near = centre + half * s
        far = width - near
        x, xa, bx = (spec.b - near, far, near) if from_b else (spec.a + near, near, far)
        terms.append(weight * _evaluate(spec, x, xa, bx))
    return half * CTX.fsum(terms)


def _end_remainder(spec: IntegralSpec, width: XReal, delta: XReal, at_b: bool) -> XReal:
    """Integral over the last gap of length delta at one endpoint.

    The integrand is fitted as c ln t + d from its values at t = delta and
    delta/2, which is exact up to O(t ln t) terms.
    """
    values = []
    for t in (delta, delta / 2):
        args = (spec.b - t, width - t, t) if at_b else (spec.a + t, t, width - t)
        values.append(_evaluate(spec, *args))
    c = (values[0] - values[1]) / CTX.ln(2)
    d = values[0] - c * CTX.ln(delta)
    return c * (delta * CTX.ln(delta) - delta) + d * delta


def integrate_gauss_legendre(
    spec: IntegralSpec, degree: int = GL_DEGREE, grading: int = GL_GRADING
) -> QuadResult:
    """Composite Gauss-Legendre on (a + delta, b - delta) plus endpoint remainders.

    Panels halve in width toward both endpoints, so an endpoint logarithm is
    smooth on every panel. The gaps of width delta = (b - a)/2^grading are
    closed with ``_end_remainder``. The reported error estimate bounds the
    neglected delta^2 |ln delta| terms for integrands of unit scale.
    """
    width = spec.b - spec.a
    delta = width / CTX.mpf(2) ** grading
    parts = []
    for from_b in (False, True):
        for j in range(grading, 1, -1):
            lo, hi = width / CTX.mpf(2) ** j, width / CTX.mpf(2) ** (j - 1)
            parts.append(_gl_panel(spec, width, lo, hi, from_b, degree))
        parts.append(_end_remainder(spec, width, delta, at_b=from_b))
    value = CTX.fsum(parts)
    bound = delta * delta * abs(CTX.ln(delta)) * max(CTX.one, abs(value))
    logger.debug(f"{spec.id}: Gauss-Legendre {2 * (grading - 1)} panels, degree {degree}")
    return QuadResult(value, 0, bound)
