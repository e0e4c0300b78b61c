"""Tests for the bounded worker pool"""

import threading
import time

import pytest

from core.task_manager import TaskDefinition, WorkPool, run_pool


@pytest.fixture
def pool():
    """Create a two-wide pool"""
    return WorkPool(width=2)


def test_pool_initialization(pool):
    """Test pool initializes empty"""
    assert pool.width == 2
    assert pool.tasks == {}
    assert pool.results == {}
    assert pool.execution_order == []


def test_rejects_zero_width():
    with pytest.raises(ValueError):
        WorkPool(width=0)


def test_register_task_sets_pending(pool):
    pool.register_task(TaskDefinition("a", lambda: 1))

    assert pool.status["a"] == WorkPool.PENDING


def test_register_duplicate_name_rejected(pool):
    pool.register_task(TaskDefinition("a", lambda: 1))

    with pytest.raises(ValueError, match="registered twice"):
        pool.register_task(TaskDefinition("a", lambda: 2))


async def test_execute_all_collects_results(pool):
    pool.register_all(TaskDefinition(f"t{i}", lambda i=i: i * i) for i in range(5))

    results = await pool.execute_all()

    assert results == {f"t{i}": i * i for i in range(5)}
    assert all(state == WorkPool.COMPLETED for state in pool.status.values())
    assert sorted(pool.execution_order) == sorted(results)


async def test_failure_is_isolated(pool):
    """One raising job does not stop the others"""

    def boom():
        raise RuntimeError("bad integrand")

    pool.register_task(TaskDefinition("ok", lambda: "fine"))
    pool.register_task(TaskDefinition("bad", boom))

    results = await pool.execute_all()

    assert results["ok"] == "fine"
    assert isinstance(results["bad"], RuntimeError)
    assert pool.failed() == ["bad"]


async def test_width_bounds_concurrency():
    pool = WorkPool(width=2)
    active = 0
    peak = 0
    lock = threading.Lock()

    def job():
        nonlocal active, peak
        with lock:
            active += 1
            peak = max(peak, active)
        time.sleep(0.05)
        with lock:
            active -= 1

    pool.register_all(TaskDefinition(f"j{i}", job) for i in range(6))
    await pool.execute_all()

    assert 1 <= peak <= 2


def test_run_pool_synchronous_entry():
    results = run_pool([TaskDefinition("x", lambda: 42)], width=1)

    assert results == {"x": 42}
