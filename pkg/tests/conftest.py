"""Shared test plumbing: the acceptance ledger and its terminal summary."""
import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_ledger():
    """Append 'ACCEPTANCE <name>: PASS|FAIL' lines here; they are echoed
    in the terminal summary so they survive output capture."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_line("")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
