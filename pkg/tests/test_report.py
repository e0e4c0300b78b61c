"""Tests for report rendering"""

import csv
import io
import json

import pytest

from core.config import Config
from core.exceptions import ReportError
from core.harness.report import (
    CSV_HEADER,
    emit_report,
    format_value,
    render,
    render_csv,
    render_json,
    render_text,
    summary_line,
)
from core.harness.types import Effort, Group, VerificationResult
from core.numerics.closedform import ClosedForm
from core.numerics.xprec import CTX, const


def _result(identity_id, passed=True, **overrides):
    fields = dict(
        id=identity_id,
        group=Group.LEMMAS,
        lhs_value=const("pi"),
        rhs_value=const("pi"),
        abs_diff=CTX.mpf(10) ** -35,
        passed=passed,
        tol=1e-25,
        effort=Effort(terms=120, levels=0),
        wall_time=0.0125,
        anchor=f"{identity_id} = pi",
        digits=35.0,
        reason=None if passed else "|lhs - rhs| = 1.0 exceeds 1e-25",
    )
    fields.update(overrides)
    return VerificationResult(**fields)


@pytest.fixture
def results():
    return [
        _result("li2_half"),
        _result("broken", passed=False, abs_diff=CTX.one, digits=0.0),
        _result(
            "weighted_example", group=Group.THEOREMS_WEIGHTED,
            lhs_value=ClosedForm.of(PI=1), rhs_value=ClosedForm.of(PI=1),
            abs_diff=ClosedForm(), tol=0.0, digits=None,
        ),
    ]


class TestFormatValue:
    def test_real_to_thirty_digits(self):
        assert format_value(const("pi")).startswith("3.1415926535897932384626433832")

    def test_complex_pair(self):
        text = format_value(CTX.mpc(1, -2))
        assert text.startswith("(") and text.endswith(")")
        assert "," in text

    def test_closed_form_and_none(self):
        assert format_value(ClosedForm.of(PI=1)) == "(1)*PI"
        assert format_value(None) == ""


class TestText:
    def test_summary_and_failures(self, results):
        text = render_text(results)
        assert text.endswith("2 passed / 3 total\n")
        assert "FAIL broken: broken = pi" in text
        assert "exact" in text

    def test_columns_aligned(self, results):
        lines = render_text(results).splitlines()
        header, rows = lines[0], lines[1:4]
        status = header.index("status")
        assert all(row[status:status + 4] in ("PASS", "FAIL") for row in rows)


def test_summary_line(results):
    assert summary_line(results) == "2 passed / 3 total"
    assert summary_line([]) == "0 passed / 0 total"


def test_json(results):
    config = Config(n_max=2, m_max=1, format="json")
    document = json.loads(render_json(results, config))
    assert document["summary"] == {"passed": 2, "total": 3}
    assert document["config"]["n_max"] == 2
    first = document["results"][0]
    assert first["id"] == "li2_half"
    assert first["effort"] == {"terms": 120, "levels": 0}
    assert first["lhs"].startswith("3.14159")
    assert document["results"][2]["abs_diff"] == "0"


def test_json_result_keys(results):
    """Test every JSON result carries exactly the published fields"""
    document = json.loads(render_json(results, Config(n_max=2, m_max=1)))
    assert set(document["results"][0]) == {
        "id", "group", "lhs", "rhs", "abs_diff", "passed", "effort", "wall_time_s", "anchor",
    }
    assert document["results"][0]["anchor"] == "li2_half = pi"
    assert set(document) == {"config", "results", "summary"}


def test_csv(results):
    rows = list(csv.reader(io.StringIO(render_csv(results))))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 4
    assert rows[1][0] == "li2_half"
    assert rows[2][5] == "false"


def test_render_dispatches_on_format(results):
    assert render(results, Config(n_max=2, m_max=1, format="csv")).startswith("id,group")
    assert render(results, Config(n_max=2, m_max=1)).startswith("id")
    assert json.loads(render(results, Config(n_max=2, m_max=1, format="json")))


class TestEmit:
    def test_to_stream(self, results):
        stream = io.StringIO()
        text = emit_report(results, Config(n_max=2, m_max=1), stream=stream)
        assert stream.getvalue() == text

    def test_to_file(self, results, tmp_path):
        out = tmp_path / "report.json"
        emit_report(results, Config(n_max=2, m_max=1, format="json", out=out))
        assert json.loads(out.read_text())["summary"]["total"] == 3

    def test_unwritable(self, results, tmp_path):
        out = tmp_path / "missing" / "report.txt"
        with pytest.raises(ReportError):
            emit_report(results, Config(n_max=2, m_max=1, out=out))
