import os
import sys
from pathlib import Path

# Без файла сессии: только консоль
os.environ["CHROMA7_LOG_DIR"] = ""
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

import pytest  # noqa: E402

from geometry import ToleranceConfig  # noqa: E402
from graphs import build_paper19, build_rim18  # noqa: E402
from solver import SetColoringSolver  # noqa: E402

DEFAULT_D = 1.30


@pytest.fixture(scope="session")
def tolcfg():
    return ToleranceConfig()


@pytest.fixture(scope="session")
def rim18():
    return build_rim18()


@pytest.fixture(scope="session")
def paper19():
    return build_paper19(DEFAULT_D)


@pytest.fixture
def solver():
    return SetColoringSolver()


@pytest.fixture(scope="session")
def rim_colorings():
    """Все правильные 3-раскраски обода, цвета 0..2"""
    return list(SetColoringSolver().enumerate_colorings(build_rim18(), 3))
