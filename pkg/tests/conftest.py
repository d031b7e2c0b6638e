import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_record():
    """Append a one-line PASS/FAIL verdict shown in the terminal summary."""

    def record(label, passed, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
