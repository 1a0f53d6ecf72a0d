import pytest

_criterion_lines = []


@pytest.fixture
def criterion_report():
    """Record one PASS/FAIL line per acceptance criterion.

    Returns the boolean so the caller can ``assert report(...)``; the line is
    printed immediately and replayed in the terminal summary, so the verdict
    survives output capture.
    """

    def report(name: str, ok: bool, detail: str) -> bool:
        line = f"{name} {'PASS' if ok else 'FAIL'}: {detail}"
        _criterion_lines.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, exitstatus):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)
