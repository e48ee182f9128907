"""Pytest wiring: the acceptance criteria recorder and its summary table."""

from __future__ import annotations

from contextlib import contextmanager

import pytest

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@contextmanager
def criterion(name: str):
    """Record pass/fail of one acceptance criterion for the summary table."""
    try:
        yield
    except BaseException as exc:
        ACCEPTANCE_RESULTS.append((name, False, str(exc).splitlines()[0][:120]))
        raise
    ACCEPTANCE_RESULTS.append((name, True, ""))


@pytest.fixture
def acceptance_criterion():
    return criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        line = f"{status}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
