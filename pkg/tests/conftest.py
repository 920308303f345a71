import numpy as np
import pytest

from neuspec import RadialCurve


@pytest.fixture(scope="session")
def disc():
    return RadialCurve.circle()


@pytest.fixture(scope="session")
def wobbly():
    """The three-lobe nonsymmetric test domain used throughout."""
    return RadialCurve.radial(1.0, 0.3, 3, 0.2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
