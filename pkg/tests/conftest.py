import pytest

VERDICTS = []


@pytest.fixture
def verdict():
    """Record one acceptance line; the test still fails on a false verdict."""
    def record(number, title, results):
        bad = sorted(k for k, v in results.items() if not v)
        VERDICTS.append((number, title, bad))
        return bad
    return record


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, bad in sorted(VERDICTS):
        status = "PASS" if not bad else "FAIL (" + ", ".join(bad) + ")"
        terminalreporter.write_line(f"criterion {number:2d} {title}: {status}")
