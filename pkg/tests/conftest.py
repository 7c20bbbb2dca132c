import numpy as np
import pytest

from isogauge.sphere import SphereGrid


@pytest.fixture(scope="session")
def grid96():
    return SphereGrid(96, 192)


@pytest.fixture(scope="session")
def grid64():
    return SphereGrid(64, 128)


@pytest.fixture()
def theta512():
    return 2.0 * np.pi * np.arange(512) / 512
