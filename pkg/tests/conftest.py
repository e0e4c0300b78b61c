"""
Pytest configuration and shared fixtures for psiverify tests

Reference values come from mpmath's global context at 60 digits, independent
of the private 40-digit context the library computes in.
"""

import sys
from pathlib import Path

import mpmath
import pytest

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

ORACLE_DIGITS = 60


@pytest.fixture
def oracle():
    """mpmath's global context raised to ORACLE_DIGITS for the duration of a test."""
    with mpmath.workdps(ORACLE_DIGITS):
        yield mpmath.mp


@pytest.fixture
def fast_config():
    """Smallest valid grid, so registry-wide tests stay quick."""
    from core.config import Config

    return Config(n_max=2, m_max=1)


@pytest.fixture
def registry(fast_config):
    from core.harness.registry import build_registry

    return build_registry(fast_config)


def close(a, b, tol) -> bool:
    """|a - b| <= tol for any mix of mpmath contexts."""
    return abs(mpmath.mpmathify(a) - mpmath.mpmathify(b)) <= tol
