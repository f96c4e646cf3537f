"""Dissipative dynamics and quantum-resource lifetimes of frequency-modulated
qubits in leaky Lorentzian cavities."""

from .dynamics import (
    BESSEL_J_FIRST_ZEROS,
    AmplitudeTrajectory,
    ModulationDrive,
    QubitCavityParams,
    SolverConfig,
    bessel_zero_amplitude,
    closed_form_detuned,
    closed_form_no_drive,
    modulation_phase,
    phase_factor_series,
    solve,
    solve_amplitude,
    solve_amplitude_volterra,
)
from .metrics import (
    EQUAL_SUPERPOSITION,
    DecayRateSeries,
    InitialSuperposition,
    NonMarkovianityResult,
    average_decay_rate,
    coherence,
    decay_rate,
    density_matrix,
    non_markovianity,
    phase_error,
    qfi,
)
from .sweeps import (
    DEFAULT_LIFETIME_EPSILON,
    LifetimeResult,
    SweepSpec,
    lifetime,
    nm_curve,
    run_sweep,
)
from .twoqubit import (
    EWLParams,
    TwoQubitSeries,
    XState,
    coherence_l1_two,
    concurrence,
    discord,
    ewl_initial,
    propagate_x_state,
    resource_time_series,
)

__version__ = "0.1.0"
