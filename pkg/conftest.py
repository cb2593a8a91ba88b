"""
Shared fixture rings.

Element ids follow the constructor encodings: Tri(2, Zn(2)) stores [[a,b],[0,d]]
as 4a + 2b + d, Mat(2, Zn(2)) stores [[a,b],[c,d]] as 8a + 4b + 2c + d and
Prod(Zn(2), Zn(2)) stores (a, b) as 2a + b.
"""

import pytest

from ring_builder import construct


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: census-wide sweeps")


@pytest.fixture(scope="session")
def z4():
    return construct("Zn(4)")


@pytest.fixture(scope="session")
def z6():
    return construct("Zn(6)")


@pytest.fixture(scope="session")
def z8():
    return construct("Zn(8)")


@pytest.fixture(scope="session")
def t2():
    """Upper triangular 2x2 matrices over F2: one = 5, e11 = 4, e12 = 2, e22 = 1."""
    return construct("Tri(2, Zn(2))")


@pytest.fixture(scope="session")
def m2():
    """All 2x2 matrices over F2: one = 9."""
    return construct("Mat(2, Zn(2))")


@pytest.fixture(scope="session")
def v():
    """F2 x F2."""
    return construct("Prod(Zn(2), Zn(2))")
