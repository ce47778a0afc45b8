from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import settings

from pqg import zoo
from pqg.pipeline import Context, run_pipeline

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@lru_cache(maxsize=None)
def built(name: str, stages: tuple[str, ...] = ()) -> tuple[dict, Context]:
    """Pipeline report and context for a zoo fixture, computed once per session."""
    ctx = Context(zoo.get(name))
    report = run_pipeline(ctx.qg, list(stages) or None, ctx=ctx)
    return report, ctx


@pytest.fixture(scope="session")
def chain():
    return built


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
