import numpy as np
import pytest
from hypothesis import strategies as st

from fanolines.field import GF, QQ
from fanolines.poly import Ring

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def polynomials(ring, max_terms=5, max_exp=3, coeff=st.integers(-9, 9)):
    """Hypothesis strategy for random polynomials in ``ring``."""
    mono = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    return st.lists(st.tuples(mono, coeff), max_size=max_terms).map(ring.from_terms)


RING_Q = Ring.standard(3, QQ)
RING_F7 = Ring.standard(3, GF(7))
