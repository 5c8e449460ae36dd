import pytest

from decoyqkd import GYS


@pytest.fixture(scope="session")
def gys():
    return GYS
