"""Single-qubit resource measures derived from an amplitude trajectory.

Everything here is a pure function of C(t): the reduced density matrix, the
l1 coherence zeta = |C|, the phase-estimation Fisher information |C|^2, the
time-local decay rate Gamma(t) = -2 Re[dC/C] with its Lamb shift partner,
and the information-backflow measure N obtained by integrating -Gamma|C|/2
over the intervals where Gamma is negative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from .dynamics import (
    AmplitudeTrajectory,
    ModulationDrive,
    QubitCavityParams,
    SolverConfig,
    solve_amplitude,
)

__all__ = [
    "InitialSuperposition",
    "EQUAL_SUPERPOSITION",
    "DecayRateSeries",
    "NonMarkovianityResult",
    "density_matrix",
    "coherence",
    "qfi",
    "phase_error",
    "decay_rate",
    "average_decay_rate",
    "non_markovianity",
]

DEFAULT_GUARD = 1e-8            # |C| below this masks the Gamma ratio
DEFAULT_DECAY_CUTOFF = 1e-4     # |C| level treated as fully decayed
_BISECT_TOL = 1e-6              # gamma*t resolution of Gamma sign changes


@dataclass(frozen=True)
class InitialSuperposition:
    """Initial qubit state alpha|e> + beta|g>."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"|alpha|^2 + |beta|^2 = {norm} is not 1")


EQUAL_SUPERPOSITION = InitialSuperposition(1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0))


@dataclass
class DecayRateSeries:
    """Gamma(t) and Lamb shift, masked where |C| falls under the guard."""

    times: np.ndarray
    gamma_t: np.ndarray
    lamb_shift: np.ndarray
    valid: np.ndarray


@dataclass
class NonMarkovianityResult:
    """Backflow measure N with the Gamma < 0 intervals that produced it."""

    value: float
    negative_intervals: list[tuple[float, float]] = field(default_factory=list)
    truncation_time: float = 0.0


def density_matrix(traj: AmplitudeTrajectory, init: InitialSuperposition, t) -> np.ndarray:
    """Reduced qubit density matrix at time t in the {|e>, |g>} basis."""
    c = traj.amplitude_at(t)
    pe = abs(init.alpha) ** 2 * abs(c) ** 2
    off = init.alpha * np.conj(init.beta) * c
    return np.array([[pe, off], [np.conj(off), 1.0 - pe]], dtype=complex)


def coherence(traj: AmplitudeTrajectory) -> np.ndarray:
    """l1 coherence zeta(t) = |C(t)| for the equal superposition."""
    return np.abs(traj.amplitudes)


def qfi(traj: AmplitudeTrajectory) -> np.ndarray:
    """Phase-estimation quantum Fisher information F(t) = |C(t)|^2."""
    z = coherence(traj)
    return z * z


def phase_error(traj: AmplitudeTrajectory) -> np.ndarray:
    """Cramer-Rao bound 1/sqrt(F) = 1/|C|; +inf where the amplitude vanishes."""
    z = coherence(traj)
    with np.errstate(divide="ignore"):
        return np.where(z > 0, 1.0 / np.where(z > 0, z, 1.0), np.inf)


def decay_rate(traj: AmplitudeTrajectory, guard: float = DEFAULT_GUARD) -> DecayRateSeries:
    """Time-local decay rate Gamma = -2 Re[dC/C] and Lamb shift -2 Im[dC/C].

    Uses the trajectory's equation-of-motion derivatives; points with
    |C| <= guard are masked (NaN) instead of failing.
    """
    z = np.abs(traj.amplitudes)
    valid = z > guard
    ratio = np.full(len(z), np.nan, dtype=complex)
    ratio[valid] = traj.derivatives[valid] / traj.amplitudes[valid]
    return DecayRateSeries(
        times=traj.times,
        gamma_t=-2.0 * np.real(ratio),
        lamb_shift=-2.0 * np.imag(ratio),
        valid=valid,
    )


def average_decay_rate(traj: AmplitudeTrajectory, t_start: float, t_end: float) -> float:
    """Interval-averaged Gamma via the exact identity d ln|C|/dt = -Gamma/2."""
    if not 0.0 <= t_start < t_end <= traj.times[-1]:
        raise ValueError("need 0 <= t_start < t_end within the trajectory range")
    c0 = abs(complex(traj.amplitude_at(t_start)))
    c1 = abs(complex(traj.amplitude_at(t_end)))
    return -2.0 * (math.log(c1) - math.log(c0)) / (t_end - t_start)


def _gamma_of(spline, spline_deriv, t):
    c = spline(t)
    return -2.0 * float(np.real(spline_deriv(t) / c))


def _bisect_sign_change(spline, spline_deriv, a, b, ga, gb):
    while b - a > _BISECT_TOL:
        m = 0.5 * (a + b)
        gm = _gamma_of(spline, spline_deriv, m)
        if gm == 0.0:
            return m
        if (ga < 0) != (gm < 0):
            b, gb = m, gm
        else:
            a, ga = m, gm
    return 0.5 * (a + b)


def _simpson_interval(spline, spline_deriv, a, b, guard, target_h, n_min=65):
    """integral of -Gamma |C| / 2 over [a, b] by composite Simpson on the
    interpolant.

    The integrand -Gamma|C|/2 = Re[dC * conj(C)]/|C| = d|C|/dt is bounded and
    nonnegative on a negative-Gamma interval, but it jumps sign exactly at an
    amplitude zero; since interval boundaries are located only to the
    bisection tolerance, the range is nudged inward by twice that tolerance
    and stray negative samples are clamped.
    """
    a += 2.0 * _BISECT_TOL
    b -= 2.0 * _BISECT_TOL
    if b <= a:
        return 0.0
    n = max(n_min, 2 * int(math.ceil((b - a) / target_h)) + 1)
    if n % 2 == 0:
        n += 1
    ts = np.linspace(a, b, n)
    c = spline(ts)
    dc = spline_deriv(ts)
    absc = np.abs(c)
    ok = absc > guard
    f = np.where(ok, np.real(dc * np.conj(c)) / np.where(ok, absc, 1.0), 0.0)
    return float(simpson(np.maximum(f, 0.0), x=ts))


def non_markovianity(
    params: QubitCavityParams,
    drive: ModulationDrive,
    horizon: float,
    config: SolverConfig | None = None,
    force_horizon: bool = False,
    guard: float = DEFAULT_GUARD,
) -> NonMarkovianityResult:
    """Backflow measure N = -(1/2) int_{Gamma<0} Gamma(t) |C(t)| dt.

    The trajectory is solved to ``horizon``; unless ``force_horizon`` is set,
    the run must have decayed (|C(horizon)| < 1e-4) so that the neglected
    tail is bounded by the remaining amplitude. Sign changes of Gamma are
    bracketed on the sample grid and refined by bisection on the
    interpolant; each negative interval is then integrated by composite
    Simpson.
    """
    if config is None:
        config = SolverConfig(t_max=horizon)
    elif config.t_max != horizon:
        config = SolverConfig(
            t_max=horizon, dt_max=config.dt_max,
            rel_tol=config.rel_tol, abs_tol=config.abs_tol, backend=config.backend,
        )
    traj = solve_amplitude(params, drive, config)

    absc = np.abs(traj.amplitudes)
    if absc[-1] >= DEFAULT_DECAY_CUTOFF and not force_horizon:
        raise ValueError(
            f"|C(horizon)| = {absc[-1]:.3g} >= {DEFAULT_DECAY_CUTOFF}; the measure has "
            "not converged -- increase the horizon or pass force_horizon=True"
        )

    # integrate only while the remaining amplitude can still contribute:
    # once max_{s>=t}|C(s)| < cutoff, everything later adds at most cutoff
    suffix_max = np.maximum.accumulate(absc[::-1])[::-1]
    decayed = np.nonzero(suffix_max < DEFAULT_DECAY_CUTOFF)[0]
    i_stop = int(decayed[0]) if len(decayed) else len(absc) - 1
    truncation_time = float(traj.times[i_stop])

    spline = traj._interpolant()
    spline_deriv = spline.derivative()
    rate = decay_rate(traj, guard)
    gam, valid = rate.gamma_t, rate.valid
    t = traj.times

    # median sample spacing sets the Simpson refinement inside intervals
    target_h = max(float(np.median(np.diff(t))) / 4.0, 1e-4)

    intervals: list[tuple[float, float]] = []
    open_start: float | None = None
    for k in range(i_stop):
        if not (valid[k] and valid[k + 1]):
            # a masked gap closes any open interval at the last valid node
            if open_start is not None and valid[k]:
                intervals.append((open_start, float(t[k])))
                open_start = None
            continue
        g0, g1 = gam[k], gam[k + 1]
        if open_start is None and g0 < 0:
            # negative from t=0, or re-entering through a masked gap
            open_start = float(t[k])
        if (g0 < 0) != (g1 < 0):
            t_cross = _bisect_sign_change(spline, spline_deriv, t[k], t[k + 1], g0, g1)
            if g1 < 0:
                open_start = t_cross
            elif open_start is not None:
                intervals.append((open_start, t_cross))
                open_start = None
    if open_start is not None:
        intervals.append((open_start, truncation_time))

    total = 0.0
    for a, b in intervals:
        if b > a:
            total += _simpson_interval(spline, spline_deriv, a, b, guard, target_h)
    return NonMarkovianityResult(
        value=max(0.0, total),
        negative_intervals=intervals,
        truncation_time=truncation_time,
    )
