import numpy as np
import pytest

import nlsoliton as nls


@pytest.fixture(scope="session")
def quick_params():
    return nls.PhysicalParams(epsilon=0.25, p=0.5, mass=1.0, dims=2)


@pytest.fixture(scope="session")
def quick_grid():
    return nls.make_grid(2, (8.0, 8.0), (64, 64))


@pytest.fixture(scope="session")
def quick_gs(quick_grid, quick_params):
    """Small, fast ground state shared by propagation and I/O tests."""
    flow = nls.FlowConfig(residual_tol=1e-6)
    return nls.solve_ground_state(quick_grid, quick_params, flow)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260825)
