"""Tests for evaluating identities and collecting results"""

import json
import logging
import math

import pytest

from core.config import Config
from core.exceptions import SeriesError, UnknownIdentityError
from core.harness.registry import Registry
from core.harness.runner import all_passed, digits_summary, resolve_tol, run_group, run_identity, run_selected
from core.harness.types import Effort, Group, IdentityRecord, Measurement, ToleranceClass
from core.numerics.closedform import ClosedForm
from core.numerics.xprec import CTX
from core.observability.logging_config import StructuredFormatter


def _numeric(identity_id, lhs, rhs, group=Group.LEMMAS, tol=None):
    return IdentityRecord(
        identity_id, group, lambda _c: Measurement(lhs, Effort(terms=3)), lambda _c: rhs,
        ToleranceClass.LEMMA, f"{identity_id} anchor", tol=tol,
    )


def _raising(identity_id, exc):
    def lhs(_ctx):
        raise exc

    return IdentityRecord(identity_id, Group.LEMMAS, lhs, lambda _c: CTX.one,
                          ToleranceClass.LEMMA, "never evaluated")


@pytest.fixture
def config():
    return Config(n_max=2, m_max=1)


class TestResolveTol:
    def test_exact_is_zero(self, registry, config):
        record = registry.get("weighted_example_half_minus_n2_m0")
        assert resolve_tol(record, config, tol=1e-3) == 0.0

    def test_precedence(self, registry, config):
        record = registry.get("weighted_stride_one_n0")
        assert resolve_tol(record, config) == 1e-26
        assert resolve_tol(record, Config(n_max=2, m_max=1, tol=1e-12)) == 1e-12
        assert resolve_tol(record, config, tol=1e-5) == 1e-5

    def test_class_default(self, registry, config):
        assert resolve_tol(registry.get("li2_half"), config) == config.tolerances.lemma
        assert resolve_tol(registry.get("ln2cos_fourier"), config) == config.tolerances.fourier


class TestRunIdentity:
    def test_numeric_pass(self, registry, config):
        result = run_identity(registry, "li2_half", config)
        assert result.passed
        assert result.tol == 1e-25
        assert result.abs_diff <= result.tol
        assert result.reason is None

    def test_series_identity_records_effort(self, registry, config):
        result = run_identity(registry, "catalan_series", config)
        assert result.passed
        assert result.effort.terms > 0

    def test_integral_identity_records_levels(self, registry, config):
        result = run_identity(registry, "integral_log_sin", config)
        assert result.passed
        assert result.effort.levels > 0

    def test_exact_pass(self, registry, config):
        result = run_identity(registry, "weighted_example_half_plus_n1_m1", config)
        assert result.passed
        assert result.tol == 0.0
        assert result.abs_diff.is_zero()
        assert result.digits is None

    def test_exact_mismatch(self, config):
        record = IdentityRecord(
            "bad_exact", Group.THEOREMS_WEIGHTED,
            lambda _c: Measurement(ClosedForm.of(PI=1)), lambda _c: ClosedForm.of(PI=2),
            ToleranceClass.EXACT, "pi = 2 pi",
        )
        result = run_identity(Registry([record]), "bad_exact", config)
        assert not result.passed
        assert "differ" in result.reason

    def test_numeric_failure(self, config):
        registry = Registry([_numeric("off_by_one", CTX.mpf(2), CTX.one)])
        result = run_identity(registry, "off_by_one", config)
        assert not result.passed
        assert "exceeds" in result.reason
        assert result.abs_diff == 1

    def test_failure_logged_with_details(self, config, caplog):
        """Test a failed identity logs its difference and tolerance"""
        caplog.set_level(logging.WARNING)
        registry = Registry([_numeric("off_by_one", CTX.mpf(2), CTX.one)])
        run_identity(registry, "off_by_one", config)
        (record,) = [r for r in caplog.records if "off_by_one failed" in r.getMessage()]
        assert record.extra_data["tol"] == config.tolerances.lemma
        assert record.extra_data["abs_diff"] == 1
        data = json.loads(StructuredFormatter().format(record))
        assert data["tol"] == config.tolerances.lemma

    def test_explicit_tolerance(self, config):
        registry = Registry([_numeric("near", CTX.mpf("1.001"), CTX.one)])
        assert not run_identity(registry, "near", config).passed
        assert run_identity(registry, "near", config, tol=1e-2).passed

    def test_engine_error_becomes_failure(self, config):
        registry = Registry([_raising("broken", SeriesError("no convergence"))])
        result = run_identity(registry, "broken", config)
        assert not result.passed
        assert result.lhs_value is None
        assert result.reason == "SeriesError: no convergence"

    def test_unknown_id(self, config):
        with pytest.raises(UnknownIdentityError):
            run_identity(Registry(), "missing", config)

    def test_digits(self, config):
        registry = Registry([_numeric("digits", CTX.one + CTX.mpf(10) ** -30, CTX.one)])
        result = run_identity(registry, "digits", config)
        assert result.passed
        assert result.digits == pytest.approx(30, abs=0.5)


class TestRunSelected:
    def _registry(self):
        return Registry(
            [
                _numeric("c_ok", CTX.one, CTX.one),
                _numeric("a_ok", CTX.mpf(2), CTX.mpf(2), group=Group.PROPERTIES),
                _numeric("b_bad", CTX.mpf(3), CTX.one),
                _raising("d_crash", ZeroDivisionError("boom")),
            ]
        )

    @pytest.mark.parametrize("jobs", [1, 3])
    def test_results_sorted_and_isolated(self, jobs):
        results = run_selected(self._registry(), Config(n_max=2, m_max=1, jobs=jobs))
        assert [r.id for r in results] == ["a_ok", "b_bad", "c_ok", "d_crash"]
        assert [r.passed for r in results] == [True, False, True, False]
        assert results[3].reason == "ZeroDivisionError: boom"
        assert not all_passed(results)

    def test_selection(self, config):
        results = run_selected(self._registry(), config, ids=["c_ok"], groups=["properties"])
        assert [r.id for r in results] == ["a_ok", "c_ok"]
        assert all_passed(results)

    def test_run_group(self, config):
        results = run_group(self._registry(), Group.PROPERTIES, config)
        assert [r.id for r in results] == ["a_ok"]

    def test_real_identities_in_parallel(self, registry):
        ids = ["li2_half", "li3_i", "odd_cube_alt_series", "alt_hk", "quad_relation_2"]
        results = run_selected(registry, Config(n_max=2, m_max=1, jobs=4), ids=ids)
        assert all_passed(results), [r.reason for r in results if not r.passed]

    def test_full_registry_is_deterministic(self, registry):
        serial = run_selected(registry, Config(n_max=2, m_max=1, jobs=1))
        parallel = run_selected(registry, Config(n_max=2, m_max=1, jobs=4))
        assert [r.id for r in serial] == [r.id for r in parallel]
        assert len(serial) == len(registry.select())
        for first, second in zip(serial, parallel, strict=True):
            assert first.abs_diff == second.abs_diff, first.id
            assert first.passed == second.passed, first.id


def test_digits_summary(config):
    registry = Registry(
        [
            _numeric("a", CTX.one + CTX.mpf(10) ** -28, CTX.one),
            _numeric("b", CTX.one + CTX.mpf(10) ** -32, CTX.one),
            _numeric("c", CTX.one, CTX.one),
        ]
    )
    results = run_selected(registry, config)
    summary = digits_summary(results)
    assert math.isfinite(summary)
    assert summary == pytest.approx(28, abs=0.5)
    assert digits_summary([]) is None
