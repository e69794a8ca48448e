import pytest

from rankmetric.gf import field_create


@pytest.fixture(scope="session")
def f16():
    # the classic modulus: xi^4 = xi + 1
    return field_create(2, 1, 4, [1, 1, 0, 0, 1])


@pytest.fixture(scope="session")
def f16_default():
    return field_create(2, 1, 4)


@pytest.fixture(scope="session")
def f32():
    return field_create(2, 1, 5)


@pytest.fixture(scope="session")
def f64():
    return field_create(2, 1, 6)


@pytest.fixture(scope="session")
def f81():
    return field_create(3, 1, 4)
