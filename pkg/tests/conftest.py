import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from landau_factor.fock_algebra import Truncation
from landau_factor.landau_model import PhysicalParams, build_model

settings.register_profile("default", deadline=None, max_examples=25, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def natural():
    return PhysicalParams.natural()


@pytest.fixture(scope="session")
def small_model(natural):
    """Cheap truncation for unit tests (interior 16 x 16)."""
    return build_model(natural, (0.0, 0.0), Truncation(24, 24, 8))


@pytest.fixture(scope="session")
def model48(natural):
    return build_model(natural, (0.0, 0.0), Truncation(48, 48, 12))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_matrix(rng, n, hermitian=False):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (m + m.conj().T) if hermitian else m
