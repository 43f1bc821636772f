import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.config import Config  # noqa: E402
from core.polynomial import IntPolynomial  # noqa: E402


@pytest.fixture(autouse=True)
def fresh_config():
    Config.clear_cache()
    yield
    Config.clear_cache()


@pytest.fixture
def q():
    return IntPolynomial.q()
