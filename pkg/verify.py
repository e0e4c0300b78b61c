#!/usr/bin/env python3
"""
psiverify - batch verification of digamma-series, polylog and integral identities
Main entry point
"""

import argparse
import contextlib
import logging
import sys
from pathlib import Path

from core.config import Config
from core.exceptions import ConfigError, RegistryError, ReportError
from core.harness.registry import build_registry
from core.harness.report import emit_report
from core.harness.runner import all_passed, run_selected
from core.harness.types import Group
from core.observability.logging_config import configure_logging, get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_CONFIG = 2


def configure_console_encoding() -> None:
    """Ensure console streams can print Unicode safely."""
    for stream_name in ("stdout", "stderr"):
        stream = getattr(sys, stream_name, None)
        reconfigure = getattr(stream, "reconfigure", None)
        if callable(reconfigure):
            with contextlib.suppress(Exception):
                reconfigure(encoding="utf-8", errors="replace")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Check closed-form identities against high-precision numerics",
    )
    parser.add_argument(
        "--group",
        action="append",
        choices=[g.value for g in Group],
        default=[],
        help="Registry group to run (repeatable)",
    )
    parser.add_argument("--id", action="append", dest="ids", default=[], help="Identity id (repeatable)")
    parser.add_argument("--n-max", type=int, help="Largest n in the theorem grids")
    parser.add_argument("--m-max", type=int, help="Largest m in the theorem grids")
    parser.add_argument("--tol", type=float, help="Absolute tolerance for every numeric identity")
    parser.add_argument("--budget-terms", type=int, help="Term budget per series")
    parser.add_argument("--quad-level", type=int, help="Finest quadrature level (3..12)")
    parser.add_argument("--jobs", type=int, help="Worker threads")
    parser.add_argument("--format", choices=["text", "json", "csv"], help="Report format")
    parser.add_argument("--out", type=Path, help="Write the report here instead of stdout")
    parser.add_argument("--list", action="store_true", help="List registered identities and exit")
    parser.add_argument("--config", type=Path, help="JSON configuration file")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--json-logs", action="store_true", help="Structured JSON logs on stderr")
    parser.add_argument("--log-file", help="Also write logs to this file")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point"""
    configure_console_encoding()
    args = build_parser().parse_args(argv)
    configure_logging(
        json_format=args.json_logs,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        log_file=args.log_file,
    )

    try:
        config = Config.load(
            args.config,
            groups=args.group or None,
            ids=args.ids or None,
            n_max=args.n_max,
            m_max=args.m_max,
            tol=args.tol,
            budget_terms=args.budget_terms,
            quad_level=args.quad_level,
            jobs=args.jobs,
            format=args.format,
            out=args.out,
            list_only=args.list or None,
        )
        registry = build_registry(config)
    except ConfigError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except RegistryError as e:
        print(f"registry error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    if config.list_only:
        for record in registry:
            print(f"{record.id}\t{record.group}\t{record.anchor}")
        return EXIT_OK

    try:
        results = run_selected(registry, config, config.groups, config.ids)
    except RegistryError as e:
        print(f"selection error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        emit_report(results, config, stream=sys.stdout)
    except ReportError as e:
        logger.error(str(e))
        return EXIT_FAILURES
    return EXIT_OK if all_passed(results) else EXIT_FAILURES


if __name__ == "__main__":
    raise SystemExit(main())
