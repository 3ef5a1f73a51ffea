import pytest

from quasicolour.corpus import example


@pytest.fixture(scope="session")
def square():
    return example("square")


@pytest.fixture(scope="session")
def hexagonal():
    return example("hexagonal")


@pytest.fixture(scope="session")
def heptagonal():
    return example("heptagonal")
