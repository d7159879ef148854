import numpy as np
import pytest

from eie import (SystemParams, build_system, derive_couplings, diffusion_matrix,
                 solve_steady_state)


@pytest.fixture(scope="session")
def fig_params():
    """Headline working point: resonant drive, strong pump, weak probe."""
    return SystemParams()


@pytest.fixture(scope="session")
def fig_couplings(fig_params):
    return derive_couplings(fig_params)


@pytest.fixture(scope="session")
def fig_steady(fig_params, fig_couplings):
    return solve_steady_state(fig_params, fig_couplings)


@pytest.fixture(scope="session")
def fig_system(fig_steady, fig_params, fig_couplings):
    return build_system(fig_steady, fig_params, fig_couplings)


@pytest.fixture(scope="session")
def fig_diffusion(fig_steady, fig_params, fig_couplings):
    return diffusion_matrix(fig_steady, fig_params, fig_couplings)


def random_params(rng):
    """A physically sane random working point (bounded optical depth)."""
    return SystemParams(
        delta1=rng.uniform(-3.0, 3.0),
        delta2=rng.uniform(-3.0, 3.0),
        gamma1=rng.uniform(0.5, 6.0),
        gamma2=rng.uniform(0.5, 6.0),
        gamma12=rng.uniform(0.01, 0.5),
        density=10 ** rng.uniform(14.0, 18.0),
        alpha1=rng.uniform(0.05, 2.0),
        alpha2=rng.uniform(1.0, 30.0),
        omega=rng.uniform(0.0, 3.0),
    )
