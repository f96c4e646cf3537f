import numpy as np
import pytest

from fmqubit import (
    ModulationDrive,
    QubitCavityParams,
    SolverConfig,
    bessel_zero_amplitude,
    solve_amplitude,
)

OPTIMAL_OMEGA = 5.0
OPTIMAL_DELTA = bessel_zero_amplitude(0, OPTIMAL_OMEGA)  # 12.02415


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def traj_weak_undriven():
    """lam = 3, drive off, gamma*t in [0, 50]."""
    return solve_amplitude(
        QubitCavityParams(lam=3.0), ModulationDrive(0.0, 0.0), SolverConfig(t_max=50.0)
    )


@pytest.fixture(scope="session")
def traj_strong_undriven():
    """lam = 0.01, drive off, long enough for the coherence to die out."""
    return solve_amplitude(
        QubitCavityParams(lam=0.01), ModulationDrive(0.0, 0.0),
        SolverConfig(t_max=1500.0),
    )


@pytest.fixture(scope="session")
def traj_optimal_5000():
    """lam = 0.01 with the best-performing drive, medium horizon."""
    return solve_amplitude(
        QubitCavityParams(lam=0.01),
        ModulationDrive(delta=OPTIMAL_DELTA, omega_m=OPTIMAL_OMEGA),
        SolverConfig(t_max=5000.0),
    )
