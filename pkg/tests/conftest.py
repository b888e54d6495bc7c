"""Collects acceptance-criterion outcomes and prints one line per criterion."""

from __future__ import annotations

import re
import sys

import pytest

sys.path.insert(0, str(__import__("pathlib").Path(__file__).parent))

_CRITERION = re.compile(r"test_criterion_(\d+)\b")
_results: dict[int, tuple[bool, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    match = _CRITERION.match(item.name)
    if not match:
        return
    number = int(match.group(1))
    doc = (item.function.__doc__ or "").strip().splitlines()
    description = doc[0] if doc else item.name
    if report.when == "call":
        _results[number] = (report.passed, description)
    elif report.when == "setup" and not report.passed:
        _results[number] = (False, description)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        passed, description = _results[number]
        word = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[criterion {number}] {word} - {description}")
