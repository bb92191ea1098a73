"""Collects acceptance outcomes and prints one line per criterion at the end of the run."""

from __future__ import annotations

import pytest

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when != "call" and not (report.when == "setup" and (report.failed or report.skipped)):
        return
    number, title = marker.args
    entry = _RESULTS.setdefault(number, {"title": title, "passed": [], "failed": [], "skipped": []})
    entry[report.outcome].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        if entry["failed"]:
            status = "FAIL"
        elif entry["passed"]:
            status = "PASS"
        else:
            status = "SKIP"
        line = f"criterion {number}: {status}  {entry['title']}"
        if entry["failed"]:
            line += f"  (failing: {', '.join(entry['failed'])})"
        terminalreporter.write_line(line)
