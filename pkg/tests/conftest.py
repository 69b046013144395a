import os
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: dict[int, tuple[bool, str, str]] = {}


class _Outcome:
    def __init__(self):
        self.ok = False
        self.detail = ""


@pytest.fixture
def criterion():
    """``with criterion(n, title) as c: ...; c.ok = ...; c.detail = ...``

    Records one pass/fail line per acceptance criterion; an exception
    inside the block records a failure.
    """

    @contextmanager
    def run(number: int, title: str):
        out = _Outcome()
        try:
            yield out
        except BaseException as exc:
            out.ok = False
            out.detail = out.detail or f"{type(exc).__name__}: {exc}"
            raise
        finally:
            _CRITERIA[number] = (out.ok, title, out.detail)

    return run


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, title, detail = _CRITERIA[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}")
