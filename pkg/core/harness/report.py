"""Text, JSON and CSV renderings of verification results"""

import csv
import io
import json
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from core.config import Config
from core.exceptions import ReportError
from core.harness.types import VerificationResult
from core.numerics.closedform import ClosedForm
from core.numerics.xprec import CTX, REPORT_DIGITS, format_decimal
from core.observability.logging_config import get_logger

logger = get_logger(__name__)

CSV_HEADER = ("id", "group", "lhs", "rhs", "abs_diff", "passed", "effort", "wall_time")


def format_value(value: Any) -> str:
    """Render a measured value to REPORT_DIGITS significant digits."""
    if value is None:
        return ""
    if isinstance(value, ClosedForm):
        return str(value)
    if isinstance(value, CTX.mpc):
        return f"({format_decimal(value.real, REPORT_DIGITS)}, {format_decimal(value.imag, REPORT_DIGITS)})"
    return format_decimal(value, REPORT_DIGITS)


def format_diff(result: VerificationResult) -> str:
    if result.abs_diff is None:
        return ""
    if isinstance(result.abs_diff, ClosedForm):
        return "0" if result.abs_diff.is_zero() else str(result.abs_diff)
    return CTX.nstr(result.abs_diff, 3)


def _effort(result: VerificationResult) -> str:
    return f"terms={result.effort.terms} levels={result.effort.levels}"


def summary_line(results: Sequence[VerificationResult]) -> str:
    passed = sum(1 for r in results if r.passed)
    return f"{passed} passed / {len(results)} total"


def render_text(results: Sequence[VerificationResult]) -> str:
    rows = [
        (
            r.id,
            "PASS" if r.passed else "FAIL",
            format_diff(r) or (r.reason or ""),
            "exact" if r.tol == 0 else f"{r.tol:g}",
            "" if r.digits is None else f"{r.digits:.1f}",
            _effort(r),
            f"{r.wall_time:.3f}s",
        )
        for r in results
    ]
    header = ("id", "status", "|lhs-rhs|", "tol", "digits", "effort", "time")
    widths = [max(len(h), *(len(row[i]) for row in rows)) for i, h in enumerate(header)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(header, widths)).rstrip()]
    lines += ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    failures = [r for r in results if not r.passed]
    if failures:
        lines.append("")
        lines += [f"FAIL {r.id}: {r.anchor}" + (f" ({r.reason})" if r.reason else "") for r in failures]
    lines.append("")
    lines.append(summary_line(results))
    return "\n".join(lines) + "\n"


def result_to_dict(result: VerificationResult) -> dict[str, Any]:
    return {
        "id": result.id,
        "group": str(result.group),
        "lhs": format_value(result.lhs_value),
        "rhs": format_value(result.rhs_value),
        "abs_diff": format_diff(result),
        "passed": result.passed,
        "effort": {"terms": result.effort.terms, "levels": result.effort.levels},
        "wall_time_s": round(result.wall_time, 6),
        "anchor": result.anchor,
    }


def render_json(results: Sequence[VerificationResult], config: Config) -> str:
    passed = sum(1 for r in results if r.passed)
    document = {
        "config": config.public_dict(),
        "results": [result_to_dict(r) for r in results],
        "summary": {"passed": passed, "total": len(results)},
    }
    return json.dumps(document, indent=2) + "\n"


def render_csv(results: Sequence[VerificationResult]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in results:
        writer.writerow(
            (
                r.id,
                str(r.group),
                format_value(r.lhs_value),
                format_value(r.rhs_value),
                format_diff(r),
                "true" if r.passed else "false",
                _effort(r),
                f"{r.wall_time:.6f}",
            )
        )
    return buffer.getvalue()


def render(results: Sequence[VerificationResult], config: Config) -> str:
    match config.format:
        case "json":
            return render_json(results, config)
        case "csv":
            return render_csv(results)
        case _:
            return render_text(results)


def emit_report(results: Sequence[VerificationResult], config: Config, stream=None) -> str:
    """Render results in ``config.format`` and write them to ``config.out`` or ``stream``.

    Raises:
        ReportError: The output file cannot be written
    """
    text = render(results, config)
    if config.out is not None:
        try:
            Path(config.out).write_text(text, encoding="utf-8")
        except OSError as e:
            raise ReportError(f"Cannot write report to {config.out}: {e}") from e
        logger.info(f"Report written to {config.out}")
    elif stream is not None:
        stream.write(text)
    return text
