import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from holsim.model import GateSpec

settings.register_profile(
    "suite", max_examples=50, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("suite")


def random_gate_spec(rng: np.random.Generator) -> GateSpec:
    return GateSpec(theta=rng.uniform(0.0, np.pi),
                    phi=rng.uniform(0.0, 2*np.pi),
                    gamma_g=rng.uniform(-2*np.pi, 2*np.pi),
                    phi0=rng.uniform(0.0, 2*np.pi))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240531)
