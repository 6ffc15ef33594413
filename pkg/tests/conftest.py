import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    """Log one PASS/FAIL line per acceptance criterion."""
    def _record(tag, ok, detail):
        line = "%s %s  %s" % ("PASS" if ok else "FAIL", tag, detail)
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
