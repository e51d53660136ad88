import os

import pytest
from hypothesis import settings

# runtime limits live in the acceptance suite; per-example deadlines only add flakes
settings.register_profile("default", deadline=None)
settings.load_profile("default")

# (criterion, passed, detail) lines collected by the acceptance suite
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run slow-marked tests")


def slow_enabled(config) -> bool:
    return config.getoption("--slow") or os.environ.get("QF_SLOW") == "1"


def pytest_collection_modifyitems(config, items):
    if slow_enabled(config):
        return
    skip = pytest.mark.skip(reason="slow; use --slow or QF_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def acceptance():
    """Record one acceptance line; call as acceptance(criterion, passed, detail)."""

    def record(criterion: str, passed: bool, detail: str = "") -> bool:
        ACCEPTANCE_LINES.append((criterion, bool(passed), detail))
        print(f"{'PASS' if passed else 'FAIL'} {criterion}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {criterion}: {detail}")
