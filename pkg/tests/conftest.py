import pytest

from q2quartic.padic.field import field_from_spec, q2


@pytest.fixture(scope="session")
def Q2():
    return q2()


@pytest.fixture(scope="session")
def U2():
    return field_from_spec({"f": 2})


@pytest.fixture(scope="session")
def K_sqrt2():
    return field_from_spec({"f": 1, "eisenstein": [-2, 0, 1]})
