import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qubitpoly.state import PureState

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def complex_numbers(max_magnitude=10.0):
    part = st.floats(-max_magnitude, max_magnitude, allow_nan=False, allow_infinity=False)
    return st.builds(complex, part, part)


def nonzero_scalars():
    return complex_numbers(100.0).filter(lambda c: abs(c) > 1e-3)


@st.composite
def qubit_states(draw, min_sites=1, max_sites=6):
    n = draw(st.integers(min_sites, max_sites))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return PureState(v, n)


def ket(*amps):
    return PureState.from_amplitudes(np.asarray(amps, dtype=complex))


def same_up_to_scale(a, b) -> float:
    """Relative distance between ``a`` and the best multiple of ``b``."""
    a, b = np.asarray(a), np.asarray(b)
    alpha = np.vdot(b, a) / np.vdot(b, b)
    return float(np.abs(a - alpha * b).max() / np.abs(a).max())


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
