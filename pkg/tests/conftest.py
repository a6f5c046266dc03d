import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "suite",
    max_examples=30,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def solenoid():
    from abgauge import SolenoidSpec
    return SolenoidSpec(R=1.0, B=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
