import pytest

from bicayley import census, gamma_t, make_group, sigma_t


@pytest.fixture(scope="session")
def group27():
    return make_group(3, 2, 1, 1)


@pytest.fixture(scope="session")
def group81a():
    return make_group(3, 2, 2, 1)


@pytest.fixture(scope="session")
def group81b():
    return make_group(3, 3, 1, 2)


@pytest.fixture(scope="session")
def gray_graph():
    return gamma_t(1)


@pytest.fixture(scope="session")
def sym162():
    return sigma_t(1)


@pytest.fixture(scope="session")
def census27(group27):
    return census(group27)


@pytest.fixture(scope="session")
def census81a(group81a):
    return census(group81a)


@pytest.fixture(scope="session")
def census81b(group81b):
    return census(group81b)
