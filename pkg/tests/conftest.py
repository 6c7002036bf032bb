import sys

import pytest

from syzlab import corpus


@pytest.fixture(scope="session")
def A2():
    return corpus.algebra("A2")


@pytest.fixture(scope="session")
def L2():
    return corpus.algebra("L2")


@pytest.fixture(scope="session")
def A3():
    return corpus.algebra("A3r")


@pytest.fixture(scope="session")
def T2L2():
    return corpus.algebra("T2(L2)")


@pytest.fixture(scope="session")
def T2A2():
    return corpus.algebra("T2(A2)")


def pytest_terminal_summary(terminalreporter):
    mod = next((m for m in list(sys.modules.values())
                if (getattr(m, "__file__", None) or "").endswith("test_acceptance.py")), None)
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
