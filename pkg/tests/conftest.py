"""Shared test plumbing: surface the acceptance criterion lines.

pytest captures stdout of passing tests, so the acceptance module
records its one-line verdicts here and a terminal-summary hook prints
them after the run, pass or fail.
"""

criterion_lines: list[str] = []


def record_criterion(line: str) -> None:
    criterion_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(criterion_lines):
            terminalreporter.write_line(line)
