import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion, then assert it."""

    def check(label, ok, detail=""):
        _ACCEPTANCE.append((label, bool(ok), detail))
        print(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return check


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
