import numpy as np
import pytest

from nullsim import ParameterGrid, frame_curve
from nullsim.curves import SampledCurve, helix_curve

TWO_PI = 2.0 * np.pi


@pytest.fixture(scope="session")
def h1():
    """Reference helix (t, cos t, sin t) on one full turn."""
    return helix_curve((0.0, TWO_PI))


@pytest.fixture(scope="session")
def h1_wide():
    """Same helix with a generous domain for transformed parameters."""
    return helix_curve((-30.0, 30.0))


@pytest.fixture(scope="session")
def h1_grid():
    return ParameterGrid.uniform(0.0, TWO_PI, 2001)


@pytest.fixture(scope="session")
def h1_framed(h1, h1_grid):
    return frame_curve(h1, h1_grid)


@pytest.fixture(scope="session")
def h1_sampled(h1, h1_grid):
    """Position-only version of the helix at step pi/1000."""
    return SampledCurve(h1_grid, h1.evaluate(h1_grid.values, 0))
