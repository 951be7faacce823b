import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("vcyc", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("vcyc")


@pytest.fixture
def rng():
    return random.Random(12345)
