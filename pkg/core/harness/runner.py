"""Evaluate registered identities and collect verification results"""

import math
import time
import uuid
from collections.abc import Iterable

from core.config import Config
from core.exceptions import VerificationLabError
from core.harness.registry import EvalContext, Registry
from core.harness.types import Effort, Group, IdentityRecord, ToleranceClass, VerificationResult
from core.numerics.closedform import ClosedForm
from core.numerics.integrals import IntegralCache
from core.numerics.xprec import CTX, xreal
from core.observability.logging_config import (
    clear_context,
    get_context,
    get_logger,
    set_context,
    timing_decorator,
)
from core.task_manager import TaskDefinition, run_pool

logger = get_logger(__name__)

# Engines are asked for tol / ENGINE_MARGIN so that truncation stays well inside tol
ENGINE_MARGIN = 100


def resolve_tol(record: IdentityRecord, config: Config, tol: float | None = None) -> float:
    """Tolerance for one record: explicit override, run-wide tol, record tol, class default."""
    if record.exact:
        return 0.0
    for candidate in (tol, config.tol, record.tol):
        if candidate is not None:
            return candidate
    return getattr(config.tolerances, ToleranceClass(record.tol_class).value)


def _numeric(value):
    return value.evaluate() if isinstance(value, ClosedForm) else value


def _digits(abs_diff, rhs) -> float | None:
    """Decimal digits of agreement, relative to |rhs| when that exceeds one."""
    if abs_diff == 0:
        return None
    scale = max(abs(rhs), CTX.one)
    return float(-CTX.log10(abs_diff / scale))


def _failed(record: IdentityRecord, tol: float, start: float, reason: str) -> VerificationResult:
    return VerificationResult(
        id=record.id,
        group=record.group,
        lhs_value=None,
        rhs_value=None,
        abs_diff=None,
        passed=False,
        tol=tol,
        effort=Effort(),
        wall_time=time.perf_counter() - start,
        anchor=record.anchor,
        reason=reason,
    )


def _evaluate(
    record: IdentityRecord, config: Config, integrals: IntegralCache, tol: float, budget: int
) -> VerificationResult:
    start = time.perf_counter()
    eps = xreal(tol) / ENGINE_MARGIN if tol > 0 else CTX.mpf(10) ** (-CTX.dps)
    ctx = EvalContext(
        eps=eps, budget_terms=budget, quad_level=config.quad_level, integrals=integrals
    )
    try:
        measured = record.lhs(ctx)
        rhs = record.rhs(ctx)
    except VerificationLabError as e:
        logger.warning(f"Identity {record.id} could not be evaluated: {type(e).__name__}: {e}")
        return _failed(record, tol, start, f"{type(e).__name__}: {e}")

    if record.exact:
        difference = measured.value - rhs
        passed = difference.is_zero()
        return VerificationResult(
            id=record.id,
            group=record.group,
            lhs_value=measured.value,
            rhs_value=rhs,
            abs_diff=difference,
            passed=passed,
            tol=0.0,
            effort=measured.effort,
            wall_time=time.perf_counter() - start,
            anchor=record.anchor,
            reason=None if passed else f"closed forms differ by {difference}",
        )

    lhs_value = _numeric(measured.value)
    rhs_value = _numeric(rhs)
    abs_diff = abs(lhs_value - rhs_value)
    passed = bool(abs_diff <= tol)
    return VerificationResult(
        id=record.id,
        group=record.group,
        lhs_value=lhs_value,
        rhs_value=rhs_value,
        abs_diff=abs_diff,
        passed=passed,
        tol=tol,
        effort=measured.effort,
        wall_time=time.perf_counter() - start,
        anchor=record.anchor,
        digits=_digits(abs_diff, rhs_value),
        reason=None if passed else f"|lhs - rhs| = {CTX.nstr(abs_diff, 5)} exceeds {tol:g}",
    )


def run_identity(
    registry: Registry,
    identity_id: str,
    config: Config,
    integrals: IntegralCache | None = None,
    tol: float | None = None,
    budget_terms: int | None = None,
) -> VerificationResult:
    """Evaluate both sides of one identity and compare them.

    Engine failures are reported as a failed result; only an unknown id raises.

    Raises:
        UnknownIdentityError: ``identity_id`` is not registered
    """
    record = registry.get(identity_id)
    resolved = resolve_tol(record, config, tol)
    budget = budget_terms or config.budget_terms
    set_context(identity_id_val=record.id, group_val=str(record.group))
    try:
        result = _evaluate(record, config, integrals or IntegralCache(), resolved, budget)
        if result.passed:
            logger.debug(f"{record.id} passed in {result.wall_time:.3f}s")
        elif result.reason and result.lhs_value is not None:
            logger.warning(
                f"{record.id} failed: {result.reason}",
                extra={"extra_data": {"abs_diff": result.abs_diff, "tol": resolved}},
            )
    finally:
        run = get_context()["run_id"]
        clear_context()
        set_context(run_id_val=run)
    return result


@timing_decorator(name="run_selected")
def run_selected(
    registry: Registry,
    config: Config,
    groups: Iterable[Group | str] = (),
    ids: Iterable[str] = (),
) -> list[VerificationResult]:
    """Run the selected identities on ``config.jobs`` workers, sorted by id."""
    records = registry.select(groups, ids)
    run = uuid.uuid4().hex[:12]
    set_context(run_id_val=run)
    logger.info(f"Verifying {len(records)} identities on {config.jobs} workers")

    integrals = IntegralCache()
    tasks = [
        TaskDefinition(
            name=record.id,
            factory=lambda r=record: run_identity(registry, r.id, config, integrals),
        )
        for record in records
    ]
    outcomes = run_pool(tasks, config.jobs)

    results = []
    for record in records:
        outcome = outcomes.get(record.id)
        if isinstance(outcome, VerificationResult):
            results.append(outcome)
        else:
            tol = resolve_tol(record, config)
            reason = f"{type(outcome).__name__}: {outcome}"
            results.append(_failed(record, tol, time.perf_counter(), reason))
    results.sort(key=lambda r: r.id)

    passed = sum(1 for r in results if r.passed)
    logger.info(f"Verification finished: {passed} passed / {len(results)} total")
    clear_context()
    return results


def run_group(registry: Registry, group: Group | str, config: Config) -> list[VerificationResult]:
    return run_selected(registry, config, groups=[group])


def all_passed(results: Iterable[VerificationResult]) -> bool:
    return all(r.passed for r in results)


def digits_summary(results: Iterable[VerificationResult]) -> float | None:
    """Fewest digits of agreement among numeric results."""
    digits = [r.digits for r in results if r.digits is not None and math.isfinite(r.digits)]
    return min(digits, default=None)
