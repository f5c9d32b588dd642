import hypothesis.strategies as st
import pytest
from hypothesis import settings

from tropot import CostMatrix, fundamental_measure, normalize_measure

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


def one_based(*pairs):
    """1-based (row, col) pairs -> 0-based cell set."""
    return frozenset((i - 1, j - 1) for i, j in pairs)


@pytest.fixture
def staircase():
    mu = normalize_measure([0, 0, -2, -3, -4, -4])
    nu = normalize_measure([0, 0, 0, -1, -2, -2])
    return mu, nu


@pytest.fixture
def unique3():
    z = fundamental_measure(3)
    return z, z, CostMatrix([[5, 1, 5], [5, 2, 5], [3, 5, 4]])


@st.composite
def measures(draw, max_size=4, values=(0, -1, -2)):
    n = draw(st.integers(1, max_size))
    raw = draw(st.lists(st.sampled_from(values), min_size=n, max_size=n))
    return normalize_measure(raw)


@st.composite
def problems(draw, max_size=4, values=(0, -1, -2), max_cost=9):
    mu = draw(measures(max_size, values))
    nu = draw(measures(max_size, values))
    c = draw(
        st.lists(
            st.lists(st.integers(0, max_cost), min_size=len(nu), max_size=len(nu)),
            min_size=len(mu),
            max_size=len(mu),
        )
    )
    return mu, nu, CostMatrix(c)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
