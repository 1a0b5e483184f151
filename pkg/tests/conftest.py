import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from helpers import WORKED_TEXT
from onemap.text import from_string

settings.register_profile(
    "default",
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_ACCEPTANCE = []


@pytest.fixture
def worked():
    return from_string(WORKED_TEXT)


@pytest.fixture
def rng():
    return np.random.default_rng(20240229)


@pytest.fixture
def report_criterion():
    """Record one acceptance line; all lines are echoed in the terminal summary."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        _ACCEPTANCE.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
