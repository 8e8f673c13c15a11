"""Shared test plumbing: acceptance criteria results are collected here and
printed as one line per criterion in the terminal summary."""

acceptance_lines = []


def record_criterion(num, label, passed, elapsed):
    status = "PASS" if passed else "FAIL"
    acceptance_lines.append(
        (num, f"criterion {num:2d} {label:<34s} {status} ({elapsed:.2f}s)"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(acceptance_lines):
        terminalreporter.write_line(line)
