"""Parameter sweeps, lifetime estimation, and N-vs-Omega curves.

Grid points are independent pure computations; results are assembled in grid
order so repeated runs (and parallel runs) produce identical tables.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import ModulationDrive, QubitCavityParams, SolverConfig, solve
from .metrics import average_decay_rate, non_markovianity
from .twoqubit import EWLParams, resource_time_series

__all__ = [
    "LifetimeResult",
    "SweepSpec",
    "lifetime",
    "nm_curve",
    "run_sweep",
    "DEFAULT_LIFETIME_EPSILON",
]

DEFAULT_LIFETIME_EPSILON = 1e-2
# per-regime horizons for N runs when the caller gives none
NM_HORIZON_WEAK = 1.0e3
NM_HORIZON_STRONG = 1.0e5

_AXIS_NAMES = ("lam", "delta", "omega_m", "r")


@dataclass(frozen=True)
class LifetimeResult:
    """Last threshold crossing of a resource series.

    ``lifetime`` is the largest t* with value < epsilon on (t*, horizon],
    found by linear interpolation; +inf means the series never settles below
    the threshold within the horizon.
    """

    lifetime: float
    horizon: float
    point: dict = field(default_factory=dict)

    @property
    def beyond_horizon(self) -> bool:
        return not math.isfinite(self.lifetime)


def lifetime(times, values, epsilon: float, horizon: float | None = None,
             point: dict | None = None) -> LifetimeResult:
    """Locate the final decay of a sampled series below ``epsilon``.

    Revivals can re-raise a quantity after it first dips under the
    threshold, so the *last* down-crossing is the meaningful lifetime.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.size == 0 or values.size != times.size:
        raise ValueError("need a non-empty series with matching times and values")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if horizon is None:
        horizon = float(times[-1])
    else:
        keep = times <= horizon
        if not keep.any():
            raise ValueError("horizon excludes every sample")
        times, values = times[keep], values[keep]

    above = values >= epsilon
    if not above.any():
        return LifetimeResult(float(times[0]), horizon, point or {})
    i = int(np.nonzero(above)[0][-1])
    if i == len(times) - 1:
        return LifetimeResult(math.inf, horizon, point or {})
    t_cross = times[i] + (values[i] - epsilon) * (times[i + 1] - times[i]) / (
        values[i] - values[i + 1]
    )
    return LifetimeResult(float(t_cross), horizon, point or {})


def nm_curve(
    params: QubitCavityParams,
    omega_values,
    delta: float | None = None,
    delta_over_omega: float | None = None,
    horizon: float | None = None,
    force_horizon: bool = False,
    config: SolverConfig | None = None,
) -> list[tuple[float, float]]:
    """Non-Markovianity N per modulation frequency.

    Exactly one of ``delta`` (fixed amplitude) or ``delta_over_omega``
    (amplitude proportional to frequency, e.g. a Bessel-zero ratio) selects
    how the drive scales along the curve.
    """
    if (delta is None) == (delta_over_omega is None):
        raise ValueError("give exactly one of delta or delta_over_omega")
    omega_values = list(omega_values)
    if any(w <= 0 for w in omega_values):
        raise ValueError("omega values must be positive")
    if sorted(omega_values) != omega_values:
        raise ValueError("omega values must be sorted ascending")
    if horizon is None:
        horizon = NM_HORIZON_WEAK if params.weak_coupling else NM_HORIZON_STRONG
    out = []
    for w in omega_values:
        d = delta if delta is not None else delta_over_omega * w
        res = non_markovianity(
            params, ModulationDrive(delta=d, omega_m=w), horizon,
            config=config, force_horizon=force_horizon,
        )
        out.append((float(w), res.value))
    return out


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for ``run_sweep``.

    ``axes`` maps parameter names (lam, delta, omega_m, r) to value lists;
    the cartesian product in axis order defines the grid. ``fixed`` holds
    the remaining parameters (lam, delta, omega_m, omega0, kind, r, mu,
    horizon, force_horizon). ``quantity`` selects what each row reports.
    """

    axes: tuple
    quantity: str
    solver: SolverConfig
    fixed: dict = field(default_factory=dict)
    lifetime_epsilon: float = DEFAULT_LIFETIME_EPSILON

    def __post_init__(self):
        if not self.axes:
            raise ValueError("at least one sweep axis is required")
        object.__setattr__(
            self, "axes", tuple((name, tuple(vals)) for name, vals in self.axes)
        )
        for name, vals in self.axes:
            if name not in _AXIS_NAMES:
                raise ValueError(f"unknown axis {name!r}; valid: {_AXIS_NAMES}")
            if len(vals) == 0:
                raise ValueError(f"axis {name!r} has no values")
        if self.quantity not in (
            "coherence", "qfi", "gamma_t", "non_markovianity", "two_qubit_resources",
        ):
            raise ValueError(f"unknown quantity {self.quantity!r}")
        if not self.lifetime_epsilon > 0:
            raise ValueError("lifetime_epsilon must be positive")


def _evaluate_point(spec: SweepSpec, point: dict) -> dict:
    merged = dict(spec.fixed)
    merged.update(point)
    params = QubitCavityParams(lam=merged["lam"], omega0=merged.get("omega0"))
    if "delta_over_omega" in merged:
        # amplitude tied to the modulation frequency (Bessel-zero rules)
        delta = merged["delta_over_omega"] * merged["omega_m"]
    else:
        delta = merged.get("delta", 0.0)
    drive = ModulationDrive(delta=delta, omega_m=merged.get("omega_m", 0.0))
    row = {}
    if spec.quantity == "non_markovianity":
        res = non_markovianity(
            params, drive, merged.get("horizon", spec.solver.t_max),
            config=spec.solver, force_horizon=merged.get("force_horizon", False),
        )
        row["N"] = res.value
        row["n_negative_intervals"] = len(res.negative_intervals)
        row["truncation_time"] = res.truncation_time
        return row

    traj = solve(params, drive, spec.solver)
    if spec.quantity in ("coherence", "qfi"):
        series = traj.coherence()
        if spec.quantity == "qfi":
            series = series * series
        life = lifetime(traj.times, series, spec.lifetime_epsilon)
        row["lifetime"] = life.lifetime
        row["final_value"] = float(series[-1])
    elif spec.quantity == "gamma_t":
        t_end = float(traj.times[-1])
        row["late_average_gamma"] = average_decay_rate(traj, 0.9 * t_end, t_end)
    else:  # two_qubit_resources
        ewl = EWLParams(
            kind=merged.get("kind", "psi"), r=merged.get("r", 1.0),
            mu=merged.get("mu", 1.0 / math.sqrt(2.0)),
        )
        series = resource_time_series(ewl, traj)
        for name, vals in (
            ("zeta2", series.zeta2),
            ("discord", series.discord),
            ("concurrence", series.concurrence),
        ):
            life = lifetime(series.times, vals, spec.lifetime_epsilon)
            row[f"lifetime_{name}"] = life.lifetime
    return row


def run_sweep(spec: SweepSpec, n_jobs: int = 1) -> list[dict]:
    """Evaluate the grid; one row per point, in grid order.

    Per-point failures land in the row's ``error`` field instead of aborting
    the sweep. With ``n_jobs != 1`` points are evaluated in parallel and
    reassembled by grid index, so the table is identical either way.
    """
    names = [name for name, _ in spec.axes]
    grids = [vals for _, vals in spec.axes]
    points = [dict(zip(names, combo)) for combo in itertools.product(*grids)]

    def one(point):
        row = dict(point)
        try:
            row.update(_evaluate_point(spec, point))
            row["error"] = None
        except Exception as exc:  # recorded per row, sweep continues
            row["error"] = f"{type(exc).__name__}: {exc}"
        return row

    if n_jobs == 1:
        return [one(p) for p in points]
    from joblib import Parallel, delayed

    return list(Parallel(n_jobs=n_jobs)(delayed(one)(p) for p in points))
