import numpy as np
import pytest
from hypothesis import strategies as st

from qimet.propsuite import random_correspondence, random_map_pair, random_space


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@st.composite
def spaces(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_space(n, seed)


@st.composite
def space_pairs_with_correspondence(draw, max_n=4):
    X = draw(spaces(max_n))
    Y = draw(spaces(max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return X, Y, random_correspondence(X.n, Y.n, seed)


@st.composite
def space_pairs_with_maps(draw, max_n=4):
    X = draw(spaces(max_n))
    Y = draw(spaces(max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return X, Y, random_map_pair(X.n, Y.n, seed)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
