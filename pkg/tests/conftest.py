import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from caratheodory import interval_algebra as ia

# filled by test_acceptance, printed once at the end of the session
ACCEPTANCE_LINES: list[str] = []


@st.composite
def rats(draw, max_den=64):
    q = draw(st.integers(1, max_den))
    return Fraction(draw(st.integers(0, q)), q)


@st.composite
def interval_pairs(draw, max_intervals=6, max_den=64):
    out = []
    for _ in range(draw(st.integers(0, max_intervals))):
        x, y = draw(rats(max_den)), draw(rats(max_den))
        out.append((min(x, y), max(x, y)))
    return out


@st.composite
def elements(draw, max_intervals=6, max_den=64):
    return ia.normalize(draw(interval_pairs(max_intervals, max_den)))


@pytest.fixture
def rng():
    return random.Random(20071210)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
