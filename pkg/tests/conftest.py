import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from chainent.xy_exact import XYModel  # noqa: E402


@pytest.fixture(scope="session")
def ising():
    return XYModel(1.0, 1.0)


@pytest.fixture(scope="session")
def xx():
    return XYModel(0.0, 0.0)


_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        label, text = marker.args
        callspec = getattr(item, "callspec", None)
        if callspec is not None:
            label = f"{label}[{callspec.id}]"
        _CRITERIA.append((label, text, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, text, outcome in _CRITERIA:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {label:<12} {status}  {text}")
