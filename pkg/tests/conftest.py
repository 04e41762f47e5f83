import pytest

from arcmult.fields import RATIONALS, prime_field


@pytest.fixture
def q_field():
    return RATIONALS


@pytest.fixture
def f2():
    return prime_field(2)


@pytest.fixture
def f3():
    return prime_field(3)
