import numpy as np
import pytest

from atomcavity import SystemParams


def draw_params(rng, k_min=0.0):
    """One random parameter set from the validated domain."""
    g = rng.uniform(0.1, 2.0)
    k = rng.uniform(k_min, 2.0)
    r = rng.uniform(0.0, 2.0)
    phase = rng.uniform(0.0, 2 * np.pi)
    return SystemParams(g=g, k=k, alpha=r * np.exp(1j * phase))


def random_psd(rng, dim):
    """Random unit-trace positive matrix."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = a @ a.conj().T
    return m / np.trace(m).real


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
