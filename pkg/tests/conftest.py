import numpy as np
import pytest
from hypothesis import strategies as st

from kframes import Frame, Relation


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@st.composite
def frames(draw, labels=("1",), max_worlds=5, min_worlds=1):
    n = draw(st.integers(min_worlds, max_worlds))
    rels = {}
    for a in labels:
        bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
        rels[a] = Relation.from_matrix(np.array(bits, dtype=bool).reshape(n, n))
    return Frame(n, rels, alphabet=labels)


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
