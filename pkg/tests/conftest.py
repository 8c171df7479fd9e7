import random

import pytest

from cornering.algebra import mckay_algebra
from cornering.checks import loop_algebra, shipped_fixtures, star_algebra


@pytest.fixture(scope="session")
def star():
    return star_algebra()


@pytest.fixture(scope="session")
def loop3():
    return loop_algebra(3)


@pytest.fixture(scope="session")
def mckay2():
    return mckay_algebra(2, 4)


@pytest.fixture(scope="session")
def mckay3():
    return mckay_algebra(3, 4)


@pytest.fixture(scope="session")
def fixtures():
    return shipped_fixtures()


@pytest.fixture
def rng():
    return random.Random(20261014)
