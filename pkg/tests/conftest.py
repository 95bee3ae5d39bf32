import pytest

from sullivan_lab.documents import corpus_entry
from sullivan_lab.dga import free_dga


def corpus(cid):
    return corpus_entry(cid).document.build()


@pytest.fixture
def m7():
    return corpus("m7")


@pytest.fixture
def b4():
    return corpus("b4")


@pytest.fixture
def heis():
    return corpus("heisenberg3")


@pytest.fixture
def lam():
    return free_dga([("a", 2), ("x", 3)], {"x": "a^2"}, 8)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
