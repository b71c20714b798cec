import pytest

from ghboq import default_pricebook
from ghboq.fixtures import get_fixture


@pytest.fixture(scope="session")
def book():
    return default_pricebook()


@pytest.fixture(scope="session")
def case_a():
    return get_fixture("A")


@pytest.fixture(scope="session")
def case_b():
    return get_fixture("B")


@pytest.fixture(scope="session")
def case_c():
    return get_fixture("C")
