import mpmath as mp
import pytest

from mblab.precision import PrecisionContext


@pytest.fixture(scope="session")
def ctx192():
    return PrecisionContext(mantissa_bits=192)


@pytest.fixture(scope="session")
def ctx256():
    return PrecisionContext(mantissa_bits=256)
