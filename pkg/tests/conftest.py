import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from matprops import Matrix, to_float

settings.register_profile("suite", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("suite")

# Regression fixtures used throughout: a 3x3 eventually strictly totally
# positive matrix whose second compound has negative entries, a 3x3
# eventually positive matrix with power index 5, and a 4x4 strictly totally
# J-sign-symmetric matrix with decimal entries.
FIXTURE_ESTP_ROWS = [[10, 2, 2], [3, 2, 1], [7, 4, 6]]
FIXTURE_EP_ROWS = [[8, 4, 1], [4, 10, 3], [-3, 5, 9]]
FIXTURE_STJS_ROWS = [
    ["5.6", "1.2", "0.7", "0.5"],
    ["6.6", "6.2", "4.1", "8.1"],
    ["4.4", "4.4", "3.5", "8"],
    ["1", "3.8", "3.4", "9"],
]


@pytest.fixture
def estp3() -> Matrix:
    return Matrix.from_rows(FIXTURE_ESTP_ROWS, "exact")


@pytest.fixture
def estp3_float() -> Matrix:
    return Matrix.from_rows(FIXTURE_ESTP_ROWS, "float")


@pytest.fixture
def ep3() -> Matrix:
    return Matrix.from_rows(FIXTURE_EP_ROWS, "exact")


@pytest.fixture
def ep3_float() -> Matrix:
    return Matrix.from_rows(FIXTURE_EP_ROWS, "float")


@pytest.fixture
def stjs4() -> Matrix:
    return Matrix.from_rows(FIXTURE_STJS_ROWS, "exact")


@pytest.fixture
def stjs4_float() -> Matrix:
    return to_float(Matrix.from_rows(FIXTURE_STJS_ROWS, "exact"))
