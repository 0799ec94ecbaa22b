import pytest

from rdslink.ff import field_make
from rdslink.constructions import (dps_system, extraspecial_rds,
                                   heisenberg_system, q8_system)


@pytest.fixture(scope="session")
def heis3():
    return heisenberg_system(field_make(3))


@pytest.fixture(scope="session")
def heis5():
    return heisenberg_system(field_make(5))


@pytest.fixture(scope="session")
def es3():
    return extraspecial_rds(3)


@pytest.fixture(scope="session")
def q8cert():
    return q8_system()


@pytest.fixture(scope="session")
def dps3():
    return dps_system(field_make(3), 3)


@pytest.fixture(scope="session")
def dps4():
    return dps_system(field_make(2, 2), 4)
