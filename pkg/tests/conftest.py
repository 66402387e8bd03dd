import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import bellgamma as bg

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def dims_2x3():
    return bg.BipartiteDims(2, 3)


@pytest.fixture
def bell_2x3(dims_2x3):
    """(|11> + |22>)/sqrt(2) embedded in the qubit-qutrit space."""
    amp = np.zeros((2, 3), dtype=complex)
    amp[0, 0] = amp[1, 1] = 1.0 / np.sqrt(2.0)
    return bg.PureState(dims_2x3, amp)


@pytest.fixture
def three_term_2x3(dims_2x3):
    """(|11> + |12> + |23>)/sqrt(3), the worked example state."""
    amp = np.zeros((2, 3), dtype=complex)
    amp[0, 0] = amp[0, 1] = amp[1, 2] = 1.0 / np.sqrt(3.0)
    return bg.PureState(dims_2x3, amp)
