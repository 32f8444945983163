"""Per-criterion pass/fail lines for the acceptance suite.

Tests carry ``@pytest.mark.criterion(n)``; a criterion passes only when
every test (and every parametrised cell) tagged with it passes.
"""

from collections import OrderedDict

import pytest

CRITERIA = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    num = getattr(report, "criterion", None)
    if num is None:
        return
    entry = CRITERIA.setdefault(num, {"passed": 0, "failed": []})
    if report.outcome == "passed":
        entry["passed"] += 1
    else:
        entry["failed"].append(report.nodeid.split("::", 1)[-1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(CRITERIA):
        entry = CRITERIA[num]
        if entry["failed"]:
            tr.write_line(f"criterion {num}: FAIL ({len(entry['failed'])} failing: {', '.join(entry['failed'])})")
        else:
            tr.write_line(f"criterion {num}: PASS ({entry['passed']} checks)")
