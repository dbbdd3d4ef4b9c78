import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: dict[int, list] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    if report.when == "call" and hasattr(report, "wasxfail"):
        status = "FAIL (known, see ledger)"
    elif report.outcome == "passed":
        status = "PASS"
    else:
        status = "FAIL"
    _CRITERIA.setdefault(number, []).append((title, status, report.duration))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is not None:
        rep.criterion = (mark.args[0], mark.kwargs.get("title", item.name))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        parts = _CRITERIA[number]
        failed = [p for p in parts if p[1] != "PASS"]
        status = "PASS" if not failed else failed[0][1]
        titles = "; ".join(f"{t} [{s}, {d:.2f}s]" for t, s, d in parts)
        terminalreporter.write_line(f"criterion {number:>2}: {status:<26} {titles}")
