import pytest

from homdim import Field, builtin_algebra, load_workspace


@pytest.fixture(scope="session")
def ws():
    return load_workspace()


@pytest.fixture(scope="session")
def ws5():
    return load_workspace(field_=Field.prime(5))


@pytest.fixture(scope="session")
def ctx(ws):
    return ws.context("U")


@pytest.fixture(scope="session")
def a3():
    return builtin_algebra("a3")


@pytest.fixture(scope="session")
def a3ba0():
    return builtin_algebra("a3-ba0")


@pytest.fixture(scope="session")
def d4_5():
    return builtin_algebra("d4", Field.prime(5))
