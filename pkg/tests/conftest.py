import pytest

from renewal_bhatt import ClassPair, ParetoClass


@pytest.fixture
def pair_a():
    """The (10, 1), (20, 2) pair used throughout the worked examples."""
    return ClassPair(ParetoClass(10.0, 1.0), ParetoClass(20.0, 2.0))


@pytest.fixture
def law_a(pair_a):
    return pair_a.law


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import REPORT

    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
