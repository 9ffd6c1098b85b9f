import pytest

from trinomial_curves.finite_field import build_field


@pytest.fixture(scope="session")
def f7():
    return build_field(7, 1)


@pytest.fixture(scope="session")
def f13():
    return build_field(13, 1)


@pytest.fixture(scope="session")
def f25():
    return build_field(5, 2)


@pytest.fixture(scope="session")
def f49():
    return build_field(7, 2)
