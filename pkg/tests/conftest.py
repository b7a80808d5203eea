import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion number -> detail line recorded by the acceptance tests
ACCEPTANCE_DETAIL: dict[int, str] = {}
ACCEPTANCE_OUTCOME: dict[int, bool] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.fixture
def record():
    def rec(n: int, detail: str) -> None:
        ACCEPTANCE_DETAIL[n] = detail

    return rec


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None and (report.when == "call" or report.failed):
        n = mark.args[0]
        ACCEPTANCE_OUTCOME[n] = ACCEPTANCE_OUTCOME.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_OUTCOME:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_OUTCOME):
        verdict = "PASS" if ACCEPTANCE_OUTCOME[n] else "FAIL"
        detail = ACCEPTANCE_DETAIL.get(n, "no detail recorded")
        terminalreporter.write_line(f"criterion {n}: {verdict}: {detail}")
