import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from config import Settings  # noqa: E402
from cox import CoxPresentation  # noqa: E402
from scenario import load_scenario  # noqa: E402

SCENARIOS = ROOT / "scenarios"
GOLDEN = Path(__file__).resolve().parent / "golden"

X_NAMES = ["x", "x1", "x2", "x3", "y", "y1", "z"]
BLOWN_UP_NAMES = ["u", "y", "x", "x1", "x2", "z", "y1", "x3"]
BLOWN_UP_ROWS = [[0, 2, 1, 1, 1, 3, 2, 1], [-1, -1, 0, 0, 0, 1, 1, 1]]
STACKY_ROWS = [[0, 2, 1, 1, 1, 3, 2, 1], [-2, 0, 1, 1, 1, 5, 4, 3]]


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: replays a whole link or a Groebner count")


@pytest.fixture
def settings():
    return Settings(seed_replicas=1)


@pytest.fixture
def scenarios_dir():
    return SCENARIOS


@pytest.fixture
def x_presentation():
    return CoxPresentation.from_rows(X_NAMES, [[1, 1, 1, 1, 2, 2, 3]], [X_NAMES])


@pytest.fixture
def blown_up_presentation():
    return CoxPresentation.from_rows(
        BLOWN_UP_NAMES, BLOWN_UP_ROWS, [["u", "y"], ["x", "x1", "x2", "z", "y1", "x3"]]
    )


@pytest.fixture(scope="session")
def x_scenario():
    return load_scenario(SCENARIOS / "X-py-link.json")


@pytest.fixture(scope="session")
def x_model(x_scenario):
    return x_scenario.model(42, 32003)


@pytest.fixture(scope="session")
def y_model():
    return load_scenario(SCENARIOS / "Y-pz-link.json").model(42, 32003)


@pytest.fixture(scope="session")
def zt_model():
    return load_scenario(SCENARIOS / "Zt-blowup-link.json").model(42, 32003)
