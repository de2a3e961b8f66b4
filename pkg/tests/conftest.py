import pytest

from algchar.gf import GF
from algchar.nilalg import make_ut


@pytest.fixture(scope="session")
def u32():
    return make_ut(3, GF(2))


@pytest.fixture(scope="session")
def u42():
    return make_ut(4, GF(2))


@pytest.fixture(scope="session")
def u33():
    return make_ut(3, GF(3))
