import random

import pytest

from twistedcubic.algebra import GF


@pytest.fixture(scope="session")
def F5():
    return GF(5)


@pytest.fixture(scope="session")
def F7():
    return GF(7)


@pytest.fixture(scope="session")
def F11():
    return GF(11)


@pytest.fixture(scope="session")
def F13():
    return GF(13)


@pytest.fixture(scope="session")
def F25():
    return GF(5, 2)


@pytest.fixture
def rng():
    return random.Random(20240611)
