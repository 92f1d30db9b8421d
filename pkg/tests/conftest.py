"""Shared fixtures plus the acceptance-criteria summary.

Each test in test_acceptance.py covers one numbered criterion; the
terminal summary prints one PASS/FAIL line per criterion so the run's
verdict is readable without digging through pytest output.
"""

import re

import pytest

from golddiv.recip_table import build_table, verify_table

_acceptance_results = {}


@pytest.fixture(scope="session")
def table_p4():
    table = build_table(4)
    verify_table(table)
    return table


@pytest.fixture(scope="session")
def table_p8():
    table = build_table(8)
    verify_table(table)
    return table


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if m:
        _acceptance_results[int(m.group(1))] = (m.group(2), report.outcome)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance_results):
        slug, outcome = _acceptance_results[num]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}: criterion {num} ({slug.replace('_', ' ')})")
