import pytest

from moprs.core import System
from moprs.functionals import IntervalLebesgue


@pytest.fixture
def leb01():
    return IntervalLebesgue(0, 1)


@pytest.fixture
def angelesco():
    return System([IntervalLebesgue(0, 1), IntervalLebesgue(2, 3)])
