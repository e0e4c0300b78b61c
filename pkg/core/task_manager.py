"""Bounded worker pool for independent verification jobs"""

import asyncio
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Any

from core.observability.logging_config import get_logger, timing_decorator

logger = get_logger(__name__)


@dataclass
class TaskDefinition:
    """A named blocking job; ``factory`` runs on a worker thread."""

    name: str
    factory: Callable[[], Any]


class WorkPool:
    """Runs blocking jobs on worker threads, at most ``width`` at a time.

    Results and exceptions are collected per task name; one failing job never
    stops the others.
    """

    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"

    def __init__(self, width: int = 1):
        if width < 1:
            raise ValueError(f"pool width must be positive, got {width}")
        self.width = width
        self.tasks: dict[str, TaskDefinition] = {}
        self.status: dict[str, str] = {}
        self.results: dict[str, Any] = {}
        self.execution_order: list[str] = []

    def register_task(self, task: TaskDefinition) -> None:
        """Register a job; names must be unique."""
        if task.name in self.tasks:
            raise ValueError(f"task {task.name!r} registered twice")
        self.tasks[task.name] = task
        self.status[task.name] = self.PENDING

    def register_all(self, tasks: Iterable[TaskDefinition]) -> None:
        for task in tasks:
            self.register_task(task)

    async def _execute_single(self, task: TaskDefinition, semaphore: asyncio.Semaphore) -> None:
        async with semaphore:
            self.status[task.name] = self.RUNNING
            try:
                result = await asyncio.to_thread(task.factory)
            except Exception as exc:
                logger.error(f"Task failed: {task.name}: {type(exc).__name__}: {exc}")
                self.status[task.name] = self.FAILED
                self.results[task.name] = exc
            else:
                self.status[task.name] = self.COMPLETED
                self.results[task.name] = result
            self.execution_order.append(task.name)

    @timing_decorator(name="work_pool")
    async def execute_all(self) -> dict[str, Any]:
        """Run every pending job and return results keyed by task name."""
        semaphore = asyncio.Semaphore(self.width)
        pending = [task for name, task in self.tasks.items() if self.status[name] == self.PENDING]
        logger.debug(f"Running {len(pending)} tasks on {self.width} workers")
        await asyncio.gather(*(self._execute_single(task, semaphore) for task in pending))
        return self.results.copy()

    def failed(self) -> list[str]:
        return [name for name, state in self.status.items() if state == self.FAILED]


def run_pool(tasks: Iterable[TaskDefinition], width: int = 1) -> dict[str, Any]:
    """Synchronous entry point: build a pool, run it, return its results."""
    pool = WorkPool(width)
    pool.register_all(tasks)
    return asyncio.run(pool.execute_all())
