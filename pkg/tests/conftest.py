import pytest

from agpir.curve import EllipticCurve, ProjectiveLine
from agpir.field import PrimeField


@pytest.fixture(scope="session")
def f43():
    return PrimeField(43)


@pytest.fixture(scope="session")
def f127():
    return PrimeField(127)


@pytest.fixture(scope="session")
def curve43(f43):
    # y^2 = x^3 + 9, the 57-point curve used throughout
    return EllipticCurve(f43, 0, 9)


@pytest.fixture(scope="session")
def curve127(f127):
    # y^2 = x^3 + x + 33, 150 points, one rational zero of y
    return EllipticCurve(f127, 1, 33)


@pytest.fixture(scope="session")
def line43(f43):
    return ProjectiveLine(f43)


class ZeroRng:
    """Stub generator that always draws zero (forces all noise off)."""

    def randrange(self, _n):
        return 0
