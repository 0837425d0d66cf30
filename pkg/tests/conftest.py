from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from nilext import corpus

DATA = Path(__file__).with_name("data")


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def ex1():
    return corpus.example1_ext(1)


@pytest.fixture(scope="session")
def ex1b():
    return corpus.example1_ext(2)


@pytest.fixture(scope="session")
def ex2():
    return corpus.example2_ext()


@pytest.fixture(scope="session")
def ex3():
    return corpus.example3_ext("phi")


small = st.integers(-3, 3).map(Fraction)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def vectors(n, elements=small):
    return st.lists(elements, min_size=n, max_size=n).map(tuple)


def vector_lists(n, max_size=4, elements=small):
    return st.lists(vectors(n, elements), max_size=max_size)


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[k])
