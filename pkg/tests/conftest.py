from fractions import Fraction

import pytest
from hypothesis import strategies as st

ACCEPTANCE_LOG = []

LAMBDAS = [Fraction(s) for s in "-3 -2 -3/2 -1 -1/2 -1/4 0 1/4 1/2 3/4 1 5/4 3/2 2 3".split()]


def rationals(max_num=60, max_den=12):
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


@pytest.fixture
def lambdas():
    return list(LAMBDAS)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LOG:
        terminalreporter.write_line(line)
