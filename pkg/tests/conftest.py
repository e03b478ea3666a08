import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from fanforge.config import Limits


@pytest.fixture(scope="session")
def big_limits():
    return Limits().relaxed(16)
