"""Shared fixtures: seeded random generators and random X-states."""
import numpy as np
import pytest

from src.quantum.qstate import XStateParams


def _random_x_params(rng: np.random.Generator) -> XStateParams:
    pops = rng.dirichlet(np.ones(4))
    u, v = rng.uniform(-0.95, 0.95, size=2)
    return XStateParams(
        rho11=float(pops[0]),
        rho22=float(pops[1]),
        rho33=float(pops[2]),
        rho44=float(pops[3]),
        rho14=float(u * np.sqrt(pops[0] * pops[3])),
        rho23=float(v * np.sqrt(pops[1] * pops[2])),
    )


@pytest.fixture
def rng():
    """Seeded generator so every run sees the same random states."""
    return np.random.default_rng(20240611)


@pytest.fixture
def random_x_states(rng):
    """Factory returning n random physical X-states."""
    def make(n: int = 50):
        return [_random_x_params(rng) for _ in range(n)]
    return make
