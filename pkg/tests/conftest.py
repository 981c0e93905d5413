import time

import pytest

FULL_SUITE_BUDGET = 60.0  # seconds, acceptance criterion 10

_lines: list = []
_started = [0.0]


def pytest_sessionstart(session):
    _started[0] = time.perf_counter()


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion.

    Usage: ``with criterion(3, "1-NN classify") as c: ...``; set ``c.detail``
    for the summary. A line is recorded whether the body passes or fails.
    """

    class Record:
        def __init__(self, number, title):
            self.number, self.title, self.detail = number, title, ""

        def __enter__(self):
            self.t0 = time.perf_counter()
            return self

        def __exit__(self, exc_type, exc, tb):
            dt = time.perf_counter() - self.t0
            status = "PASS" if exc_type is None else "FAIL"
            detail = self.detail if exc_type is None else f"{exc_type.__name__}: {exc}"
            _lines.append((self.number, f"criterion {self.number:>2}  {status}  {self.title} ({dt:.2f}s) {detail}".rstrip()))
            return False

    return Record


@pytest.hookimpl(tryfirst=True)
def pytest_sessionfinish(session, exitstatus):
    if not _lines:
        return
    elapsed = time.perf_counter() - _started[0]
    ok = elapsed < FULL_SUITE_BUDGET
    _lines.append((10, f"criterion 10  {'PASS' if ok else 'FAIL'}  full test suite under {FULL_SUITE_BUDGET:.0f} s ({elapsed:.2f}s)"))
    if not ok and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not _lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_lines, key=lambda x: x[0]):
        terminalreporter.write_line(line)
