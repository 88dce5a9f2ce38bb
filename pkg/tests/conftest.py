import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bohmatom import ModelParams, OracleConfig


@pytest.fixture(scope="session")
def model():
    return ModelParams()


@pytest.fixture(scope="session")
def cfg():
    return OracleConfig()
