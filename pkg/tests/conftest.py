import sys

import pytest

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

# (criterion id, description, passed) recorded by test_acceptance.py
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, desc, ok in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {cid}: {desc}")


@pytest.fixture
def record_criterion():
    def record(cid, desc, ok):
        ACCEPTANCE_RESULTS.append((cid, desc, bool(ok)))
        return ok

    return record
