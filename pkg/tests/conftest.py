import pytest

import isacnet as I

ACCEPTANCE = {}


@pytest.fixture
def table1():
    return I.load_config("table1-defaults")


@pytest.fixture
def geo():
    return I.Geometry(500.0)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
