import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))

from linalg import FieldSpec  # noqa: E402


@pytest.fixture
def qq():
    return FieldSpec.rational()


@pytest.fixture
def f2():
    return FieldSpec.prime(2)


@pytest.fixture
def f3():
    return FieldSpec.prime(3)
