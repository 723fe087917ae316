"""Shared pytest plumbing: the acceptance-criteria summary table.

Acceptance tests append one line per criterion; the terminal-summary
hook prints them after the run regardless of output capture.
"""

acceptance_lines = []

import pytest


@pytest.fixture(scope="session")
def acceptance_report():
    return acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
