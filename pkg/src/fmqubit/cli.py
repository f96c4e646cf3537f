"""Command-line front end: config parsing, run dispatch, CSV output.

Subcommands: ``single`` (one-qubit time series), ``pair`` (two-qubit
resource series), ``sweep-nm`` (N vs modulation frequency), ``lifetime``
(threshold crossing of one quantity), and ``figure <id>`` (the canned
parameter sets behind the reference plots). Values can come from a
``--config`` file in ``[section]`` / ``key = value`` form, with command-line
flags taking precedence.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, fields

import numpy as np

from .csvio import emit_csv
from .dynamics import (
    BESSEL_J_FIRST_ZEROS,
    ModulationDrive,
    QubitCavityParams,
    SolverConfig,
    solve,
)
from .metrics import decay_rate
from .sweeps import lifetime as lifetime_of
from .sweeps import nm_curve
from .twoqubit import EWLParams, resource_time_series

__all__ = ["RunConfig", "parse_config", "figure_command", "main"]

MODES = ("single", "pair", "sweep-nm", "lifetime", "figure")
LIFETIME_QUANTITIES = ("coherence", "qfi", "zeta2", "discord", "concurrence")

_SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass
class RunConfig:
    """Fully resolved run description (file values merged with CLI flags)."""

    mode: str | None = None
    output: str | None = None
    figure: str | None = None
    tau_q: float | None = None
    # physics
    lam: float | None = None
    delta: float = 0.0
    omega_m: float = 0.0
    omega0: float | None = None
    # initial state
    alpha: complex = _SQRT_HALF
    beta: complex = _SQRT_HALF
    kind: str | None = None
    r: float | None = None
    mu: complex = _SQRT_HALF
    nu: complex | None = None
    # solver
    t_max: float | None = None
    dt_max: float | None = None
    rel_tol: float = 1e-9
    abs_tol: float = 1e-9
    backend: str = "ode_reduction"
    # sweep-nm
    omega_values: list | None = None
    omega_min: float | None = None
    omega_max: float | None = None
    omega_points: int = 15
    omega_scale: str = "linear"
    delta_rule: str = "fixed"
    ratio: float | None = None
    horizon: float | None = None
    force_horizon: bool = False
    # lifetime
    quantity: str = "coherence"
    epsilon: float = 1e-2
    stride: int = 1


class ConfigError(ValueError):
    pass


def _fail(line: int | None, msg: str):
    where = f"line {line}: " if line is not None else ""
    raise ConfigError(f"{where}{msg}")


def _to_float(key, raw, line):
    try:
        return float(raw)
    except ValueError:
        _fail(line, f"malformed number for {key}: {raw!r}")


def _to_int(key, raw, line):
    try:
        return int(raw)
    except ValueError:
        _fail(line, f"malformed integer for {key}: {raw!r}")


def _to_complex(key, raw, line):
    try:
        return complex(raw.replace(" ", ""))
    except ValueError:
        _fail(line, f"malformed complex number for {key}: {raw!r}")


def _to_bool(key, raw, line):
    low = raw.strip().lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    _fail(line, f"malformed boolean for {key}: {raw!r}")


def _to_float_list(key, raw, line):
    try:
        return [float(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        _fail(line, f"malformed number list for {key}: {raw!r}")


def _positive(key, value, line):
    if value is not None and not value > 0:
        _fail(line, f"{key} must be positive, got {value}")
    return value


def _nonnegative(key, value, line):
    if value is not None and value < 0:
        _fail(line, f"{key} must be >= 0, got {value}")
    return value


def _choice(key, raw, options, line):
    if raw not in options:
        _fail(line, f"{key} must be one of {options}, got {raw!r}")
    return raw


def _unit_interval(key, value, line):
    if value is not None and not 0.0 <= value <= 1.0:
        _fail(line, f"{key} must lie in [0, 1], got {value}")
    return value


# section -> key -> (attribute, converter). Converters receive (key, raw, line).
_SCHEMA = {
    "run": {
        "mode": ("mode", lambda k, v, ln: _choice(k, v, MODES, ln)),
        "output": ("output", lambda k, v, ln: v),
        "figure": ("figure", lambda k, v, ln: v),
        "tau_q": ("tau_q", lambda k, v, ln: _positive(k, _to_float(k, v, ln), ln)),
        "stride": ("stride", lambda k, v, ln: _positive(k, _to_int(k, v, ln), ln)),
    },
    "physics": {
        "lambda": ("lam", lambda k, v, ln: _positive(k, _to_float(k, v, ln), ln)),
        "delta": ("delta", lambda k, v, ln: _nonnegative(k, _to_float(k, v, ln), ln)),
        "omega": ("omega_m", lambda k, v, ln: _nonnegative(k, _to_float(k, v, ln), ln)),
        "omega0": ("omega0", lambda k, v, ln: _positive(k, _to_float(k, v, ln), ln)),
    },
    "initial": {
        "alpha": ("alpha", _to_complex),
        "beta": ("beta", _to_complex),
        "kind": ("kind", lambda k, v, ln: _choice(k, v, ("psi", "phi"), ln)),
        "r": ("r", lambda k, v, ln: _unit_interval(k, _to_float(k, v, ln), ln)),
        "mu": ("mu", _to_complex),
        "nu": ("nu", _to_complex),
    },
    "solver": {
        "t_max": ("t_max", lambda k, v, ln: _positive(k, _to_float(k, v, ln), ln)),
        "dt_max": ("dt_max", lambda k, v, ln: _positive(k, _to_float(k, v, ln), ln)),
        "rel_tol": ("rel_tol", lambda k, v, ln: _positive(k, _to_float(k, v, ln), ln)),
        "abs_tol": ("abs_tol", lambda k, v, ln: _positive(k, _to_float(k, v, ln), ln)),
        "backend": ("backend", lambda k, v, ln: _choice(
            k, v, ("ode_reduction", "volterra_quadrature"), ln)),
    },
    "sweep": {
        "omega_values": ("omega_values", _to_float_list),
        "omega_min": ("omega_min", lambda k, v, ln: _positive(k, _to_float(k, v, ln), ln)),
        "omega_max": ("omega_max", lambda k, v, ln: _positive(k, _to_float(k, v, ln), ln)),
        "omega_points": ("omega_points", lambda k, v, ln: _positive(k, _to_int(k, v, ln), ln)),
        "omega_scale": ("omega_scale", lambda k, v, ln: _choice(k, v, ("linear", "log"), ln)),
        "delta_rule": ("delta_rule", lambda k, v, ln: _choice(k, v, ("fixed", "ratio"), ln)),
        "ratio": ("ratio", lambda k, v, ln: _positive(k, _to_float(k, v, ln), ln)),
        "horizon": ("horizon", lambda k, v, ln: _positive(k, _to_float(k, v, ln), ln)),
        "force_horizon": ("force_horizon", _to_bool),
    },
    "lifetime": {
        "quantity": ("quantity", lambda k, v, ln: _choice(k, v, LIFETIME_QUANTITIES, ln)),
        "epsilon": ("epsilon", lambda k, v, ln: _positive(k, _to_float(k, v, ln), ln)),
    },
}


def parse_config(text: str) -> RunConfig:
    """Parse a ``[section]`` / ``key = value`` document into a RunConfig.

    Unknown sections or keys are rejected with their line number, as are
    malformed or out-of-range values.
    """
    cfg = RunConfig()
    section = None
    for ln, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#") or line.startswith(";"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in _SCHEMA:
                _fail(ln, f"unknown section [{section}]")
            continue
        if "=" not in line:
            _fail(ln, f"expected 'key = value', got {line!r}")
        if section is None:
            _fail(ln, "key outside of any [section]")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in _SCHEMA[section]:
            _fail(ln, f"unknown key {key!r} in section [{section}]")
        attr, convert = _SCHEMA[section][key]
        setattr(cfg, attr, convert(key, raw, ln))
    return cfg


def _require(cfg: RunConfig, names: dict):
    missing = [label for label, value in names.items() if value is None]
    if missing:
        raise ConfigError(
            f"mode {cfg.mode!r} requires: {', '.join(missing)}"
        )


def _solver_config(cfg: RunConfig) -> SolverConfig:
    return SolverConfig(
        t_max=cfg.t_max, dt_max=cfg.dt_max,
        rel_tol=cfg.rel_tol, abs_tol=cfg.abs_tol, backend=cfg.backend,
    )


def _physics(cfg: RunConfig):
    params = QubitCavityParams(lam=cfg.lam, omega0=cfg.omega0)
    drive = ModulationDrive(delta=cfg.delta, omega_m=cfg.omega_m)
    return params, drive


def _provenance(cfg: RunConfig, mode: str) -> dict:
    sections = {
        "run": {"mode": mode, "output": cfg.output, "figure": cfg.figure,
                "tau_q": cfg.tau_q},
        "physics": {"lambda": cfg.lam, "delta": cfg.delta, "omega": cfg.omega_m,
                    "omega0": cfg.omega0},
        "solver": {"t_max": cfg.t_max, "dt_max": cfg.dt_max, "rel_tol": cfg.rel_tol,
                   "abs_tol": cfg.abs_tol, "backend": cfg.backend},
    }
    if mode == "pair":
        sections["initial"] = {"kind": cfg.kind, "r": cfg.r,
                               "mu": cfg.mu.real if cfg.mu.imag == 0 else cfg.mu}
        sections["run"]["stride"] = cfg.stride if cfg.stride != 1 else None
    if mode == "sweep-nm":
        sections["sweep"] = {
            "delta_rule": cfg.delta_rule, "ratio": cfg.ratio,
            "omega_values": cfg.omega_values,
            "omega_min": cfg.omega_min, "omega_max": cfg.omega_max,
            "omega_points": cfg.omega_points if cfg.omega_values is None else None,
            "omega_scale": cfg.omega_scale if cfg.omega_values is None else None,
            "horizon": cfg.horizon, "force_horizon": cfg.force_horizon,
        }
    if mode == "lifetime":
        sections["lifetime"] = {"quantity": cfg.quantity, "epsilon": cfg.epsilon}
        if cfg.quantity in ("zeta2", "discord", "concurrence"):
            sections["initial"] = {"kind": cfg.kind, "r": cfg.r,
                                   "mu": cfg.mu.real if cfg.mu.imag == 0 else cfg.mu}
    return sections


def _with_time_columns(cfg: RunConfig, times, columns):
    cols = [("gamma_t", times)]
    if cfg.tau_q is not None:
        cols.append(("time_seconds", np.asarray(times) * cfg.tau_q))
    cols.extend(columns)
    return cols


def _single_columns(cfg: RunConfig, traj):
    z = traj.coherence()
    rate = decay_rate(traj)
    with np.errstate(divide="ignore"):
        err = np.where(z > 0, 1.0 / np.where(z > 0, z, 1.0), np.inf)
    return _with_time_columns(cfg, traj.times, [
        ("re_C", traj.amplitudes.real),
        ("im_C", traj.amplitudes.imag),
        ("coherence", z),
        ("qfi", z * z),
        ("phase_error", err),
        ("gamma_of_t", rate.gamma_t),
        ("lamb_shift", rate.lamb_shift),
    ])


def run_single(cfg: RunConfig) -> str:
    _require(cfg, {"lambda": cfg.lam, "t_max": cfg.t_max, "output": cfg.output})
    params, drive = _physics(cfg)
    traj = solve(params, drive, _solver_config(cfg))
    return emit_csv(cfg.output, _single_columns(cfg, traj), _provenance(cfg, "single"))


def run_pair(cfg: RunConfig) -> str:
    _require(cfg, {"lambda": cfg.lam, "t_max": cfg.t_max, "output": cfg.output,
                   "kind": cfg.kind, "r": cfg.r})
    params, drive = _physics(cfg)
    traj = solve(params, drive, _solver_config(cfg))
    ewl = EWLParams(kind=cfg.kind, r=cfg.r, mu=cfg.mu, nu=cfg.nu)
    series = resource_time_series(ewl, traj, stride=cfg.stride)
    cols = _with_time_columns(cfg, series.times, [
        ("concurrence", series.concurrence),
        ("discord", series.discord),
        ("zeta2", series.zeta2),
    ])
    return emit_csv(cfg.output, cols, _provenance(cfg, "pair"))


def _omega_grid(cfg: RunConfig):
    if cfg.omega_values:
        return sorted(cfg.omega_values)
    _require(cfg, {"omega_min": cfg.omega_min, "omega_max": cfg.omega_max})
    if cfg.omega_scale == "log":
        return list(np.geomspace(cfg.omega_min, cfg.omega_max, cfg.omega_points))
    return list(np.linspace(cfg.omega_min, cfg.omega_max, cfg.omega_points))


def run_sweep_nm(cfg: RunConfig, path: str | None = None) -> str:
    _require(cfg, {"lambda": cfg.lam, "output": cfg.output})
    params = QubitCavityParams(lam=cfg.lam, omega0=cfg.omega0)
    omegas = _omega_grid(cfg)
    if cfg.delta_rule == "ratio":
        _require(cfg, {"ratio": cfg.ratio})
        curve = nm_curve(params, omegas, delta_over_omega=cfg.ratio,
                         horizon=cfg.horizon, force_horizon=cfg.force_horizon)
        deltas = [cfg.ratio * w for w in omegas]
    else:
        curve = nm_curve(params, omegas, delta=cfg.delta,
                         horizon=cfg.horizon, force_horizon=cfg.force_horizon)
        deltas = [cfg.delta] * len(omegas)
    cols = [
        ("omega_over_gamma", np.array([w for w, _ in curve])),
        ("delta_over_gamma", np.array(deltas)),
        ("N", np.array([n for _, n in curve])),
    ]
    return emit_csv(path or cfg.output, cols, _provenance(cfg, "sweep-nm"))


def run_lifetime(cfg: RunConfig) -> str:
    _require(cfg, {"lambda": cfg.lam, "t_max": cfg.t_max, "output": cfg.output})
    params, drive = _physics(cfg)
    traj = solve(params, drive, _solver_config(cfg))
    if cfg.quantity in ("coherence", "qfi"):
        series = traj.coherence()
        if cfg.quantity == "qfi":
            series = series * series
        times = traj.times
    else:
        _require(cfg, {"kind": cfg.kind, "r": cfg.r})
        ewl = EWLParams(kind=cfg.kind, r=cfg.r, mu=cfg.mu, nu=cfg.nu)
        two = resource_time_series(ewl, traj, stride=cfg.stride)
        times = two.times
        series = getattr(two, {"zeta2": "zeta2", "discord": "discord",
                               "concurrence": "concurrence"}[cfg.quantity])
    res = lifetime_of(times, series, cfg.epsilon)
    cols = [
        ("lifetime_gamma_t", np.array([res.lifetime])),
        ("horizon_gamma_t", np.array([res.horizon])),
        ("epsilon", np.array([cfg.epsilon])),
        ("beyond_horizon", np.array([1.0 if res.beyond_horizon else 0.0])),
    ]
    return emit_csv(cfg.output, cols, _provenance(cfg, "lifetime"))


# --------------------------------------------------------------------------
# figure registry

_J0, _J1, _J2, _J3 = BESSEL_J_FIRST_ZEROS
_OPT_OMEGA = 5.0  # modulation frequency of the best-performing drive


def _fig_single(lam, curves, t_max, dt_max=None):
    return {"type": "single", "lam": lam, "curves": curves, "t_max": t_max,
            "dt_max": dt_max}


def _fig_nm(lam, curves, omegas, horizon, force):
    return {"type": "nm", "lam": lam, "curves": curves, "omegas": omegas,
            "horizon": horizon, "force": force}


def _fig_pair(lam, kind, r_values, delta, omega_m, t_max, stride):
    return {"type": "pair", "lam": lam, "kind": kind, "r_values": r_values,
            "delta": delta, "omega_m": omega_m, "t_max": t_max, "stride": stride}


_NM_OMEGAS_STRONG = [round(w, 6) for w in np.geomspace(0.05, 40.0, 21)]

FIGURES = {
    # weak-coupling coherence: drive off vs slow, moderate, and fast drives
    "fig2a": _fig_single(3.0, [("off", 0.0, 0.0), ("omega0.5", 10.0, 0.5),
                               ("omega1", 10.0, 1.0), ("omega100", 10.0, 100.0)], 60.0),
    # induced non-Markovianity in weak coupling for growing drive amplitude
    "fig3": _fig_nm(3.0, [("delta1", ("fixed", 1.0)), ("delta5", ("fixed", 5.0)),
                          ("delta10", ("fixed", 10.0))],
                    [round(w, 6) for w in np.linspace(0.1, 5.0, 25)], 1000.0, False),
    # N vs Omega under strong coupling, amplitude tied to Bessel zeros ...
    "fig4a": _fig_nm(0.01, [("j0", ("ratio", _J0)), ("j1", ("ratio", _J1))],
                     _NM_OMEGAS_STRONG, 1000.0, True),
    "fig4b": _fig_nm(0.01, [("j2", ("ratio", _J2))], _NM_OMEGAS_STRONG, 1000.0, True),
    # ... and with fixed amplitudes (approach the undriven value at large Omega)
    "fig4c": _fig_nm(0.01, [("delta0.1", ("fixed", 0.1)), ("delta1", ("fixed", 1.0))],
                     _NM_OMEGAS_STRONG, 1000.0, True),
    "fig4d": _fig_nm(0.01, [("delta5", ("fixed", 5.0)), ("delta10", ("fixed", 10.0))],
                     _NM_OMEGAS_STRONG, 1000.0, True),
    # strong-coupling coherence at the four Bessel-zero amplitude ratios
    "fig5a": _fig_single(0.01, [(f"omega{w:g}", _J0 * w, w) for w in (0.05, 0.5, 5.0)], 5000.0),
    "fig5b": _fig_single(0.01, [(f"omega{w:g}", _J1 * w, w) for w in (0.05, 0.5, 5.0)], 5000.0),
    "fig5c": _fig_single(0.01, [(f"omega{w:g}", _J2 * w, w) for w in (0.05, 0.5, 5.0)], 5000.0),
    "fig5d": _fig_single(0.01, [(f"omega{w:g}", _J3 * w, w) for w in (0.05, 0.5, 5.0)], 5000.0),
    # time-dependent decay rate at the J0-zero ratio
    "fig6a": _fig_single(0.01, [("omega0.001", _J0 * 0.001, 0.001)], 500.0),
    "fig6b": _fig_single(0.01, [("omega0.05", _J0 * 0.05, 0.05)], 500.0),
    "fig6c": _fig_single(0.01, [("omega0.5", _J0 * 0.5, 0.5)], 500.0),
    "fig6d": _fig_single(0.01, [("omega5", _J0 * 5.0, 5.0)], 500.0),
    # strong-coupling coherence at fixed amplitude delta = 5
    "fig7": _fig_single(0.01, [("off", 0.0, 0.0), ("omega0.001", 5.0, 0.001),
                               ("omega0.9", 5.0, 0.9), ("omega2.1", 5.0, 2.1)], 2000.0),
    # Fisher information / phase error at the J0-zero ratio
    "fig8": _fig_single(0.01, [(f"omega{w:g}", _J0 * w, w) for w in (0.05, 0.2, 0.5, 5.0)],
                        5000.0),
    # two-qubit resources, attenuated strong coupling, optimal drive
    "fig9": _fig_pair(0.1, "psi", (1.0, 0.8, 0.5, 0.3), _J0 * _OPT_OMEGA, _OPT_OMEGA,
                      30000.0, 10),
    "fig10": _fig_pair(0.1, "phi", (1.0, 0.8, 0.5, 0.3), _J0 * _OPT_OMEGA, _OPT_OMEGA,
                       30000.0, 10),
}


def figure_command(figure_id: str, outdir: str = ".", tau_q: float | None = None) -> list[str]:
    """Emit one CSV per curve of the named reference figure."""
    if figure_id not in FIGURES:
        raise ConfigError(
            f"unknown figure id {figure_id!r}; valid ids: {', '.join(sorted(FIGURES))}"
        )
    plan = FIGURES[figure_id]
    paths = []
    # provenance records the basename so the same figure produces
    # byte-identical files regardless of the output directory
    if plan["type"] == "single":
        for label, delta, omega in plan["curves"]:
            name = f"{figure_id}_{label}.csv"
            cfg = RunConfig(mode="single", lam=plan["lam"], delta=delta, omega_m=omega,
                            t_max=plan["t_max"], dt_max=plan["dt_max"], tau_q=tau_q,
                            figure=figure_id, output=name)
            params, drive = _physics(cfg)
            traj = solve(params, drive, _solver_config(cfg))
            paths.append(emit_csv(os.path.join(outdir, name),
                                  _single_columns(cfg, traj),
                                  _provenance(cfg, "single")))
    elif plan["type"] == "nm":
        for label, (rule, value) in plan["curves"]:
            name = f"{figure_id}_{label}.csv"
            cfg = RunConfig(mode="sweep-nm", lam=plan["lam"], tau_q=tau_q,
                            figure=figure_id, omega_values=list(plan["omegas"]),
                            horizon=plan["horizon"], force_horizon=plan["force"],
                            output=name)
            if rule == "ratio":
                cfg.delta_rule, cfg.ratio = "ratio", value
            else:
                cfg.delta_rule, cfg.delta = "fixed", value
            run_sweep_nm(cfg, path=os.path.join(outdir, name))
            paths.append(os.path.join(outdir, name))
    else:  # pair
        params = QubitCavityParams(lam=plan["lam"])
        drive = ModulationDrive(delta=plan["delta"], omega_m=plan["omega_m"])
        solver = SolverConfig(t_max=plan["t_max"])
        traj = solve(params, drive, solver)  # one solve feeds every r curve
        for r in plan["r_values"]:
            name = f"{figure_id}_r{r:g}.csv"
            cfg = RunConfig(mode="pair", lam=plan["lam"], delta=plan["delta"],
                            omega_m=plan["omega_m"], t_max=plan["t_max"],
                            kind=plan["kind"], r=r, tau_q=tau_q, figure=figure_id,
                            stride=plan["stride"], output=name)
            ewl = EWLParams(kind=cfg.kind, r=cfg.r, mu=cfg.mu)
            series = resource_time_series(ewl, traj, stride=cfg.stride)
            cols = _with_time_columns(cfg, series.times, [
                ("concurrence", series.concurrence),
                ("discord", series.discord),
                ("zeta2", series.zeta2),
            ])
            paths.append(emit_csv(os.path.join(outdir, name), cols,
                                  _provenance(cfg, "pair")))
    return paths


# --------------------------------------------------------------------------
# argument parsing

def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="run-config file ([section] / key = value)")
    p.add_argument("--output", help="output CSV path")
    p.add_argument("--tau-q", dest="tau_q", type=float,
                   help="qubit relaxation time in seconds; adds a physical-time column")
    g = p.add_argument_group("physics")
    g.add_argument("--lambda", dest="lam", type=float, help="cavity spectral half-width / gamma")
    g.add_argument("--delta", type=float, help="modulation amplitude / gamma")
    g.add_argument("--omega", dest="omega_m", type=float, help="modulation frequency / gamma")
    g.add_argument("--omega0", type=float, help="qubit transition frequency / gamma")
    s = p.add_argument_group("solver")
    s.add_argument("--t-max", dest="t_max", type=float)
    s.add_argument("--dt-max", dest="dt_max", type=float)
    s.add_argument("--rel-tol", dest="rel_tol", type=float)
    s.add_argument("--abs-tol", dest="abs_tol", type=float)
    s.add_argument("--backend", choices=("ode_reduction", "volterra_quadrature"))


def _add_pair_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("initial state")
    g.add_argument("--kind", choices=("psi", "phi"))
    g.add_argument("--r", type=float, help="purity mixing parameter in [0, 1]")
    g.add_argument("--mu", type=complex)
    g.add_argument("--nu", type=complex)
    g.add_argument("--stride", type=int, help="output decimation for long series")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmqubit",
        description="Quantum-resource dynamics of frequency-modulated qubits "
                    "in leaky Lorentzian cavities (all rates in units of gamma).",
    )
    sub = parser.add_subparsers(dest="mode", required=True)

    p = sub.add_parser("single", help="single-qubit time series")
    _add_common_flags(p)

    p = sub.add_parser("pair", help="two-qubit resource time series")
    _add_common_flags(p)
    _add_pair_flags(p)

    p = sub.add_parser("sweep-nm", help="non-Markovianity vs modulation frequency")
    _add_common_flags(p)
    g = p.add_argument_group("sweep")
    g.add_argument("--omega-values", dest="omega_values",
                   help="comma-separated modulation frequencies")
    g.add_argument("--omega-min", dest="omega_min", type=float)
    g.add_argument("--omega-max", dest="omega_max", type=float)
    g.add_argument("--omega-points", dest="omega_points", type=int)
    g.add_argument("--omega-scale", dest="omega_scale", choices=("linear", "log"))
    g.add_argument("--delta-rule", dest="delta_rule", choices=("fixed", "ratio"))
    g.add_argument("--ratio", type=float, help="delta / omega ratio for delta_rule=ratio")
    g.add_argument("--horizon", type=float)
    g.add_argument("--force-horizon", dest="force_horizon", action="store_true",
                   default=None)

    p = sub.add_parser("lifetime", help="threshold-crossing lifetime of one quantity")
    _add_common_flags(p)
    _add_pair_flags(p)
    g = p.add_argument_group("lifetime")
    g.add_argument("--quantity", choices=LIFETIME_QUANTITIES)
    g.add_argument("--epsilon", type=float)

    p = sub.add_parser("figure", help="emit the CSV data behind a reference figure")
    p.add_argument("figure_id")
    p.add_argument("--outdir", default=".")
    p.add_argument("--tau-q", dest="tau_q", type=float)

    return parser


def _merge_cli(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    """Command-line flags override file values."""
    attr_names = {f.name for f in fields(RunConfig)}
    for name, value in vars(args).items():
        if name in attr_names and value is not None:
            if name == "omega_values" and isinstance(value, str):
                value = _to_float_list("omega_values", value, None)
            setattr(cfg, name, value)
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.mode == "figure":
            paths = figure_command(args.figure_id, outdir=args.outdir, tau_q=args.tau_q)
            for path in paths:
                print(path)
            return 0
        if getattr(args, "config", None):
            with open(args.config, encoding="utf-8") as fh:
                cfg = parse_config(fh.read())
        else:
            cfg = RunConfig()
        cfg = _merge_cli(cfg, args)
        cfg.mode = args.mode
        runner = {
            "single": run_single,
            "pair": run_pair,
            "sweep-nm": run_sweep_nm,
            "lifetime": run_lifetime,
        }[args.mode]
        print(runner(cfg))
        return 0
    except (ConfigError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
