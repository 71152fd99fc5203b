import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR
