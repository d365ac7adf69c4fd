import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("repseg", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repseg")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def unit_square():
    return np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def triangle2():
    return np.array([[0.0, 0.0], [2.0, 0.0], [1.0, math.sqrt(3.0)]])


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
