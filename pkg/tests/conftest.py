import pytest

# lines collected by test_acceptance.py, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    def record(k: int, what: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {what}" + (f" ({detail})" if detail else "")
        print(line)
        ACCEPTANCE_LINES.append(line)
        assert ok, line

    return record
