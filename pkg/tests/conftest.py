import pytest

from quandlecoh import catalog


@pytest.fixture(scope="session")
def r3():
    return catalog.r3()


@pytest.fixture(scope="session")
def r4():
    return catalog.r4()


@pytest.fixture(scope="session")
def s4():
    return catalog.s4()


@pytest.fixture(scope="session")
def z8_t5():
    return catalog.z8_t5()


@pytest.fixture(scope="session")
def z8_t3():
    return catalog.z8_t3()
