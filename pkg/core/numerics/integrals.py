"""Catalogue of definite integrals, their closed forms and the combination identities.

Every integrand takes ``(x, x - a, b - x)`` and is written so that logarithms
near an endpoint use the exact distance to it. Combination identities are
signed sums of catalogue integrals; their components are integrated once per
run through an IntegralCache.
"""

import threading
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction as F

from core.exceptions import QuadratureError
from core.numerics.closedform import ClosedForm
from core.numerics.polylog import dilog, trilog, zeta3
from core.numerics.quadrature import (
    MAX_LEVEL,
    IntegralSpec,
    QuadResult,
    Singularity,
    integrate,
)
from core.numerics.xprec import CTX, XReal, const, xreal
from core.observability.logging_config import get_logger

logger = get_logger(__name__)

# components share one accuracy so cached values serve every combination;
# coefficient weights stay below COMPONENT_MARGIN / 4
COMPONENT_MARGIN = 256


class IntegralId(StrEnum):
    ATAN_LOG1P_SQ = "atan_log1p_sq"  # arctan x ln(1+x^2)/x
    ATAN_LOG1P = "atan_log1p"  # arctan x ln(1+x)/x
    ATAN_LOG1M = "atan_log1m"  # arctan x ln(1-x)/x
    X_ATAN_LOG = "x_atan_log"  # x arctan x ln x/(1+x^2)
    LOG_LOG1P_SQ = "log_log1p_sq"  # ln x ln(1+x^2)/(1+x^2)
    LOG1M_LOG1P_SQ = "log1m_log1p_sq"  # ln(1-x) ln(1+x^2)/x
    LOG1M_LOG1P = "log1m_log1p"  # ln(1-x) ln(1+x)/x
    X_LOG_LOG1M = "x_log_log1m"  # x ln x ln(1-x)/(1+x^2)
    X_LOG_LOG1M_SQ = "x_log_log1m_sq"  # x ln x ln(1-x^2)/(1+x^2)
    LOG_OVER_1M_SQ = "log_over_1m_sq"  # ln x/(1-x^2)
    LOG_COS = "log_cos"  # ln cos t on (0, pi/4)
    LOG_COS_SQUARED = "log_cos_squared"  # ln^2 cos t on (0, pi/4)
    LOG1M_SQUARED = "log1m_squared"  # ln^2(1-x)/x
    LOG1M_SQ_SQUARED = "log1m_sq_squared"  # ln^2(1-x^2)/x
    X_ATAN_LOG1P_SQ = "x_atan_log1p_sq"  # x arctan x ln(1+x^2)/(1+x^2)
    ATAN_LOG1M_SQ = "atan_log1m_sq"  # arctan x ln(1-x^2)/x
    LOG1P_SQUARED = "log1p_squared"  # ln^2(1+x)/x
    LOG_SIN = "log_sin"  # ln sin t on (0, pi/2)
    LOG_SIN_SQUARED = "log_sin_squared"  # ln^2 sin t on (0, pi/2)


@dataclass(frozen=True)
class CatalogEntry:
    spec: IntegralSpec
    closed_form: ClosedForm


@dataclass(frozen=True)
class Combination:
    """Signed sum of catalogue integrals equal to ``closed_form``.

    With ``cube_root`` set the identity is (sum)^(1/3) = closed_form.
    """

    id: str
    terms: tuple[tuple[F, IntegralId], ...]
    closed_form: ClosedForm
    cube_root: bool = False


# Endpoint-stable building blocks


def _ln_x(x: XReal, one_minus_x: XReal) -> XReal:
    # ln x from the exact distance to 1 when x is close to 1
    if one_minus_x < 0.5:
        return CTX.log1p(-one_minus_x)
    return CTX.ln(x)


def _atan_log1p_sq(x, _xa, _bx):
    return CTX.atan(x) * CTX.log1p(x * x) / x


def _atan_log1p(x, _xa, _bx):
    return CTX.atan(x) * CTX.log1p(x) / x


def _atan_log1m(x, _xa, bx):
    return CTX.atan(x) * CTX.ln(bx) / x


def _x_atan_log(x, _xa, bx):
    return x * CTX.atan(x) * _ln_x(x, bx) / (1 + x * x)


def _log_log1p_sq(x, _xa, bx):
    return _ln_x(x, bx) * CTX.log1p(x * x) / (1 + x * x)


def _log1m_log1p_sq(x, _xa, bx):
    return CTX.ln(bx) * CTX.log1p(x * x) / x


def _log1m_log1p(x, _xa, bx):
    return CTX.ln(bx) * CTX.log1p(x) / x


def _x_log_log1m(x, _xa, bx):
    return x * _ln_x(x, bx) * CTX.ln(bx) / (1 + x * x)


def _x_log_log1m_sq(x, _xa, bx):
    return x * _ln_x(x, bx) * (CTX.ln(bx) + CTX.log1p(x)) / (1 + x * x)


def _log_over_1m_sq(x, _xa, bx):
    return _ln_x(x, bx) / (bx * (1 + x))


def _log_cos(t, _ta, _bt):
    return CTX.ln(CTX.cos(t))


def _log_cos_squared(t, _ta, _bt):
    return CTX.ln(CTX.cos(t)) ** 2


def _log1m_squared(x, _xa, bx):
    return CTX.ln(bx) ** 2 / x


def _log1m_sq_squared(x, _xa, bx):
    return (CTX.ln(bx) + CTX.log1p(x)) ** 2 / x


def _x_atan_log1p_sq(x, _xa, _bx):
    return x * CTX.atan(x) * CTX.log1p(x * x) / (1 + x * x)


def _atan_log1m_sq(x, _xa, bx):
    return CTX.atan(x) * (CTX.ln(bx) + CTX.log1p(x)) / x


def _log1p_squared(x, _xa, _bx):
    return CTX.log1p(x) ** 2 / x


def _log_sin(t, ta, _bt):
    # sin t from the distance to 0, which is t itself
    return CTX.ln(CTX.sin(ta))


def _log_sin_squared(t, ta, _bt):
    return CTX.ln(CTX.sin(ta)) ** 2


def _entry(
    integral_id: IntegralId,
    integrand,
    closed_form: ClosedForm,
    singularity: Singularity = Singularity.NONE,
    upper: XReal | None = None,
    description: str = "",
) -> tuple[IntegralId, CatalogEntry]:
    spec = IntegralSpec(
        id=integral_id,
        integrand=integrand,
        a=CTX.zero,
        b=CTX.one if upper is None else upper,
        singularity=singularity,
        description=description,
    )
    return integral_id, CatalogEntry(spec, closed_form)


def _build_catalog() -> dict[IntegralId, CatalogEntry]:
    quarter_pi = const("pi") / 4
    half_pi = const("pi") / 2
    cf = ClosedForm.of
    return dict(
        [
            _entry(
                IntegralId.ATAN_LOG1P_SQ, _atan_log1p_sq,
                cf(G_LN2=1, PI3=F(1, 16), PI_LN2SQ=F(1, 8), IM_LI3=-2),
                description="int_0^1 arctan(x) ln(1+x^2)/x dx",
            ),
            _entry(
                IntegralId.ATAN_LOG1P, _atan_log1p,
                cf(G_LN2=F(3, 2), PI3=F(3, 32), PI_LN2SQ=F(3, 16), IM_LI3=-3),
                description="int_0^1 arctan(x) ln(1+x)/x dx",
            ),
            _entry(
                IntegralId.ATAN_LOG1M, _atan_log1m,
                cf(G_LN2=F(1, 2), PI_LN2SQ=F(1, 16), IM_LI3=-1),
                Singularity.LOG_AT_B,
                description="int_0^1 arctan(x) ln(1-x)/x dx",
            ),
            _entry(
                IntegralId.X_ATAN_LOG, _x_atan_log,
                cf(PI3=F(-5, 64), PI_LN2SQ=F(-1, 8), IM_LI3=2),
                Singularity.LOG_AT_A,
                description="int_0^1 x arctan(x) ln(x)/(1+x^2) dx",
            ),
            _entry(
                IntegralId.LOG_LOG1P_SQ, _log_log1p_sq,
                cf(G_LN2=-1, PI3=F(3, 32), PI_LN2SQ=F(1, 8), IM_LI3=-2),
                Singularity.LOG_AT_A,
                description="int_0^1 ln(x) ln(1+x^2)/(1+x^2) dx",
            ),
            _entry(
                IntegralId.LOG1M_LOG1P_SQ, _log1m_log1p_sq,
                cf(G_PI=F(-1, 2), ZETA3=F(23, 32)),
                Singularity.LOG_AT_B,
                description="int_0^1 ln(1-x) ln(1+x^2)/x dx",
            ),
            _entry(
                IntegralId.LOG1M_LOG1P, _log1m_log1p,
                cf(ZETA3=F(-5, 8)),
                Singularity.LOG_AT_B,
                description="int_0^1 ln(1-x) ln(1+x)/x dx",
            ),
            _entry(
                IntegralId.X_LOG_LOG1M, _x_log_log1m,
                cf(ZETA3=F(41, 64), PI2_LN2=F(-3, 32)),
                Singularity.LOG_BOTH,
                description="int_0^1 x ln(x) ln(1-x)/(1+x^2) dx",
            ),
            _entry(
                IntegralId.X_LOG_LOG1M_SQ, _x_log_log1m_sq,
                cf(ZETA3=F(13, 32), PI2_LN2=F(-1, 16)),
                Singularity.LOG_BOTH,
                description="int_0^1 x ln(x) ln(1-x^2)/(1+x^2) dx",
            ),
            _entry(
                IntegralId.LOG_OVER_1M_SQ, _log_over_1m_sq,
                cf(PI2=F(-1, 8)),
                Singularity.LOG_AT_A,
                description="int_0^1 ln(x)/(1-x^2) dx",
            ),
            _entry(
                IntegralId.LOG_COS, _log_cos,
                cf(PI_LN2=F(-1, 4), G=F(1, 2)),
                upper=quarter_pi,
                description="int_0^(pi/4) ln(cos t) dt",
            ),
            _entry(
                IntegralId.LOG_COS_SQUARED, _log_cos_squared,
                cf(G_LN2=F(-1, 2), PI_LN2SQ=F(5, 16), PI3=F(7, 192), IM_LI3=-1),
                upper=quarter_pi,
                description="int_0^(pi/4) ln^2(cos t) dt",
            ),
            _entry(
                IntegralId.LOG1M_SQUARED, _log1m_squared,
                cf(ZETA3=2),
                Singularity.LOG_AT_B,
                description="int_0^1 ln^2(1-x)/x dx",
            ),
            _entry(
                IntegralId.LOG1M_SQ_SQUARED, _log1m_sq_squared,
                cf(ZETA3=1),
                Singularity.LOG_AT_B,
                description="int_0^1 ln^2(1-x^2)/x dx",
            ),
            _entry(
                IntegralId.X_ATAN_LOG1P_SQ, _x_atan_log1p_sq,
                cf(G_LN2=F(1, 2), PI3=F(-7, 192), PI_LN2SQ=F(-1, 4), IM_LI3=1),
                description="int_0^1 x arctan(x) ln(1+x^2)/(1+x^2) dx",
            ),
            _entry(
                IntegralId.ATAN_LOG1M_SQ, _atan_log1m_sq,
                cf(G_LN2=2, PI3=F(3, 32), PI_LN2SQ=F(1, 4), IM_LI3=-4),
                Singularity.LOG_AT_B,
                description="int_0^1 arctan(x) ln(1-x^2)/x dx",
            ),
            _entry(
                IntegralId.LOG1P_SQUARED, _log1p_squared,
                cf(ZETA3=F(1, 4)),
                description="int_0^1 ln^2(1+x)/x dx",
            ),
            _entry(
                IntegralId.LOG_SIN, _log_sin,
                cf(PI_LN2=F(-1, 2)),
                Singularity.LOG_AT_A,
                upper=half_pi,
                description="int_0^(pi/2) ln(sin t) dt",
            ),
            _entry(
                IntegralId.LOG_SIN_SQUARED, _log_sin_squared,
                cf(PI_LN2SQ=F(1, 2), PI3=F(1, 24)),
                Singularity.LOG_AT_A,
                upper=half_pi,
                description="int_0^(pi/2) ln^2(sin t) dt",
            ),
        ]
    )


CATALOG = _build_catalog()


def integral_spec(integral_id: IntegralId | str) -> IntegralSpec:
    """Look up a catalogue integrand.

    Raises:
        QuadratureError: Unknown id
    """
    return _lookup(integral_id).spec


def integral_closed_form(integral_id: IntegralId | str) -> ClosedForm:
    return _lookup(integral_id).closed_form


def _lookup(integral_id) -> CatalogEntry:
    try:
        return CATALOG[IntegralId(integral_id)]
    except ValueError as e:
        raise QuadratureError(f"unknown integral {integral_id!r}") from e


# Combination identities

_ATAN_LOG1P_SQ = IntegralId.ATAN_LOG1P_SQ
_ATAN_LOG1P = IntegralId.ATAN_LOG1P
_ATAN_LOG1M = IntegralId.ATAN_LOG1M
_X_ATAN_LOG = IntegralId.X_ATAN_LOG
_LOG_LOG1P_SQ = IntegralId.LOG_LOG1P_SQ
_X_ATAN_LOG1P_SQ = IntegralId.X_ATAN_LOG1P_SQ


def _combo(combo_id: str, closed_form: ClosedForm, *terms, cube_root=False):
    return Combination(
        id=combo_id,
        terms=tuple((F(c), i) for c, i in terms),
        closed_form=closed_form,
        cube_root=cube_root,
    )


def _build_combinations() -> dict[str, Combination]:
    cf = ClosedForm.of
    combos = [
        # arctan/log combinations with elementary closed forms
        _combo("quad_combo_1", cf(G_LN2=4, PI3=F(-1, 16)),
               (2, _ATAN_LOG1P), (1, _ATAN_LOG1P_SQ), (4, _X_ATAN_LOG)),
        _combo("quad_combo_2", cf(PI_LN2SQ=F(3, 8), PI3=F(-1, 48)),
               (1, _ATAN_LOG1P_SQ), (-2, _X_ATAN_LOG1P_SQ), (2, _X_ATAN_LOG)),
        _combo("quad_combo_3", cf(G_LN2=2, PI3=F(-1, 16)),
               (1, _ATAN_LOG1M), (1, _ATAN_LOG1P), (2, _X_ATAN_LOG)),
        _combo("quad_combo_4", cf(G_LN2=2, PI_LN2SQ=F(-3, 8), PI3=F(-1, 96)),
               (1, _ATAN_LOG1P_SQ), (2, _X_ATAN_LOG1P_SQ)),
        # relations in which Im Li3(1+i) cancels
        _combo("quad_relation_1", cf(PI3=1), (F(32, 3), _ATAN_LOG1P), (-32, _ATAN_LOG1M)),
        _combo("quad_relation_2", ClosedForm(), (3, _ATAN_LOG1P_SQ), (-2, _ATAN_LOG1P)),
        _combo("quad_relation_3", cf(PI3=1), (16, _ATAN_LOG1P_SQ), (-32, _ATAN_LOG1M)),
        _combo("quad_relation_4", cf(PI3=F(-3, 32), G_LN2=6),
               (6, _X_ATAN_LOG), (4, _ATAN_LOG1P)),
        _combo("quad_relation_5", cf(PI3=F(-1, 64), G_LN2=1),
               (1, _X_ATAN_LOG), (1, _ATAN_LOG1P_SQ)),
        _combo("quad_relation_6", cf(PI3=F(-5, 64), G_LN2=1),
               (1, _X_ATAN_LOG), (2, _ATAN_LOG1M)),
        _combo("quad_relation_7", cf(G_LN2=-6, PI3=F(3, 32)),
               (3, _LOG_LOG1P_SQ), (-2, _ATAN_LOG1P)),
        _combo("quad_relation_8", cf(G_LN2=-2, PI3=F(1, 32)),
               (1, _LOG_LOG1P_SQ), (-1, _ATAN_LOG1P_SQ)),
        _combo("quad_relation_9", cf(G_LN2=-2, PI3=F(3, 32)),
               (1, _LOG_LOG1P_SQ), (-2, _ATAN_LOG1M)),
        _combo("quad_relation_10", cf(G_LN2=3, PI3=F(-1, 64), PI_LN2SQ=F(-9, 16)),
               (1, _ATAN_LOG1P), (3, _X_ATAN_LOG1P_SQ)),
        _combo("quad_relation_11", cf(G_LN2=1, PI3=F(-7, 192), PI_LN2SQ=F(-3, 16)),
               (1, _ATAN_LOG1M), (1, _X_ATAN_LOG1P_SQ)),
        _combo("quad_relation_12", cf(G_LN2=-1, PI3=F(1, 64)),
               (1, _LOG_LOG1P_SQ), (1, _X_ATAN_LOG)),
        _combo("quad_relation_13", cf(G_LN2=1, PI3=F(1, 192), PI_LN2SQ=F(-3, 8)),
               (2, _X_ATAN_LOG1P_SQ), (-1, _X_ATAN_LOG)),
        # pi as a cube root
        _combo("pi_cube_1", cf(PI=1),
               (16, _ATAN_LOG1P_SQ), (-32, _ATAN_LOG1M), cube_root=True),
        _combo("pi_cube_2", cf(PI=1),
               (F(32, 3), _ATAN_LOG1P), (-32, _ATAN_LOG1M), cube_root=True),
    ]
    return {c.id: c for c in combos}



COMBINATIONS = _build_combinations()


def combination(combo_id: str) -> Combination:
    try:
        return COMBINATIONS[combo_id]
    except KeyError as e:
        raise QuadratureError(f"unknown integral combination {combo_id!r}") from e


def combination_from_parts(combo: Combination) -> ClosedForm:
    """Signed sum of the components' closed forms (before any cube root)."""
    total = ClosedForm()
    for coeff, integral_id in combo.terms:
        total = total + coeff * integral_closed_form(integral_id)
    return total


class IntegralCache:
    """Per-run cache of quadrature results keyed by (id, eps, max_level).

    Each key has its own lock so concurrent identities sharing a component
    integrate it once.
    """

    def __init__(self):
        self._results: dict[tuple, QuadResult] = {}
        self._locks: dict[tuple, threading.Lock] = {}
        self._guard = threading.Lock()

    def __len__(self) -> int:
        return len(self._results)

    def get(self, integral_id: IntegralId | str, eps, max_level: int = MAX_LEVEL) -> QuadResult:
        spec = integral_spec(integral_id)
        key = (spec.id, CTX.nstr(xreal(eps), 6), max_level)
        cached = self._results.get(key)
        if cached is not None:
            return cached
        with self._guard:
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            cached = self._results.get(key)
            if cached is None:
                cached = integrate(spec, eps, max_level)
                self._results[key] = cached
                logger.debug(f"Cached integral {spec.id} after {cached.levels_used} levels")
        return cached


def evaluate_combination(
    combo: Combination, eps, cache: IntegralCache | None = None, max_level: int = MAX_LEVEL
) -> tuple[XReal, int]:
    """Numerical value of a combination and the deepest level any component needed."""
    cache = cache or IntegralCache()
    component_eps = xreal(eps) / COMPONENT_MARGIN
    total = CTX.zero
    levels = 0
    for coeff, integral_id in combo.terms:
        result = cache.get(integral_id, component_eps, max_level)
        total += CTX.mpf(coeff.numerator) / coeff.denominator * result.value
        levels = max(levels, result.levels_used)
    if combo.cube_root:
        total = CTX.cbrt(total)
    return total, levels


# Parametric integrals from the polylog lemmas, for real 0 < z <= 1


class LemmaIntegral(StrEnum):
    LOG_LOG = "log_log"  # int_0^z ln t ln(1-t)/t dt
    LOG1M_SQUARED = "log1m_squared"  # int_0^z ln^2(1-t)/t dt
    LOG1P_SQUARED = "log1p_squared"  # int_0^z ln^2(1+t)/t dt
    TRIGAMMA_KERNEL = "trigamma_kernel"  # int_0^1 ln t ln(1-zt)/(1-t) dt


def _one_minus(z: XReal, bx: XReal) -> XReal:
    # 1 - t = (1 - z) + (z - t)
    return (1 - z) + bx


def _lemma_integrand(kind: LemmaIntegral, z: XReal) -> Callable:
    match kind:
        case LemmaIntegral.LOG_LOG:
            return lambda t, _ta, bt: CTX.ln(t) * CTX.ln(_one_minus(z, bt)) / t
        case LemmaIntegral.LOG1M_SQUARED:
            return lambda t, _ta, bt: CTX.ln(_one_minus(z, bt)) ** 2 / t
        case LemmaIntegral.LOG1P_SQUARED:
            return lambda t, _ta, _bt: CTX.log1p(t) ** 2 / t
        case LemmaIntegral.TRIGAMMA_KERNEL:
            return lambda t, _ta, bt: _ln_x(t, bt) * CTX.log1p(-z * t) / bt


def _lemma_closed_value(kind: LemmaIntegral, z: XReal) -> XReal:
    match kind:
        case LemmaIntegral.LOG_LOG:
            return (trilog(z) - CTX.ln(z) * dilog(z)).real
        case LemmaIntegral.LOG1M_SQUARED:
            if z == 1:
                return 2 * zeta3()
            w = 1 - z
            lw = CTX.ln(w)
            return (
                CTX.ln(z) * lw**2 + 2 * lw * dilog(w).real - 2 * trilog(w).real + 2 * zeta3()
            )
        case LemmaIntegral.LOG1P_SQUARED:
            lp = CTX.log1p(z)
            w = 1 / (1 + z)
            return (
                CTX.ln(z) * lp**2
                - lp**3 * 2 / 3
                - 2 * lp * dilog(w).real
                - 2 * trilog(w).real
                + 2 * zeta3()
            )
        case LemmaIntegral.TRIGAMMA_KERNEL:
            raise QuadratureError("the trigamma kernel integral has no standalone closed form")


def lemma_integral(kind: LemmaIntegral | str, z, eps, max_level: int = MAX_LEVEL) -> QuadResult:
    """Integrate one of the lemma integrands at a real sample point.

    Raises:
        QuadratureError: z outside (0, 1] (or (0, 1) for the trigamma kernel)
    """
    kind = LemmaIntegral(kind)
    z = xreal(z)
    upper_ok = z < 1 if kind is LemmaIntegral.TRIGAMMA_KERNEL else z <= 1
    if not (0 < z and upper_ok):
        raise QuadratureError(f"{kind} integral sampled outside its range, z={CTX.nstr(z, 10)}")
    upper = CTX.one if kind is LemmaIntegral.TRIGAMMA_KERNEL else z
    spec = IntegralSpec(
        id=f"{kind}({CTX.nstr(z, 6)})",
        integrand=_lemma_integrand(kind, z),
        a=CTX.zero,
        b=upper,
        singularity=Singularity.LOG_AT_A,
    )
    return integrate(spec, eps, max_level)


def lemma_closed_value(kind: LemmaIntegral | str, z) -> XReal:
    """Polylog form of a lemma integral at real z in (0, 1]."""
    return _lemma_closed_value(LemmaIntegral(kind), xreal(z))
