import numpy as np
import pytest
from hypothesis import settings

SEED = 20240917

settings.register_profile("physkit", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("physkit")


def pytest_report_header(config):
    return f"physkit property-test seed: {SEED} (hypothesis derandomized)"


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)
