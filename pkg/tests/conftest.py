"""Shared test plumbing: acceptance criteria get one summary line each."""

_ACCEPTANCE_LINES = []


def record_criterion(number: int, passed: bool, detail: str) -> None:
    _ACCEPTANCE_LINES.append((number, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(_ACCEPTANCE_LINES):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}: {detail}")
