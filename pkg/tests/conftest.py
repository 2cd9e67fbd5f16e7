import sys

import pytest

from envelope.corpus import abelian, heisenberg, sl2, solvable2


@pytest.fixture
def heis():
    return heisenberg()


@pytest.fixture
def sl():
    return sl2()


@pytest.fixture
def solv():
    return solvable2()


@pytest.fixture
def k1():
    return abelian(1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
