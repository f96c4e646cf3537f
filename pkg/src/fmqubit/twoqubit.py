"""Two-qubit X-state resources under independent local amplitude channels.

Two noninteracting qubits sit in separate cavities; each evolves under its
own amplitude map |e> -> c|e> (Kraus pair diag(c,1) and sqrt(1-|c|^2)|g><e|).
Werner-like initial states keep the X shape under this map, so populations,
the two anti-diagonal coherences, and all three quantifiers (concurrence,
discord, l1 coherence) have closed forms.

Basis order: |1>=|e_A e_B>, |2>=|e_A g_B>, |3>=|g_A e_B>, |4>=|g_A g_B>.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import AmplitudeTrajectory

__all__ = [
    "EWLParams",
    "XState",
    "TwoQubitSeries",
    "ewl_initial",
    "propagate_x_state",
    "concurrence",
    "discord",
    "coherence_l1_two",
    "resource_time_series",
]

_POS_TOL = 1e-10


@dataclass(frozen=True)
class EWLParams:
    """Extended Werner-like state: r * |pure><pure| + (1-r)/4 * I.

    ``kind`` selects the Bell-like pure part: "psi" = mu|ee> + nu|gg>,
    "phi" = mu|eg> + nu|ge>. When ``nu`` is omitted it is fixed real and
    nonnegative by normalization.
    """

    kind: str
    r: float
    mu: complex
    nu: complex | None = None

    def __post_init__(self):
        if self.kind not in ("psi", "phi"):
            raise ValueError(f"kind must be 'psi' or 'phi', got {self.kind!r}")
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"r must lie in [0, 1], got {self.r}")
        if self.nu is None:
            rem = 1.0 - abs(self.mu) ** 2
            if rem < -1e-12:
                raise ValueError(f"|mu| = {abs(self.mu)} exceeds 1")
            object.__setattr__(self, "nu", math.sqrt(max(rem, 0.0)))
        norm = abs(self.mu) ** 2 + abs(self.nu) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"|mu|^2 + |nu|^2 = {norm} is not 1")


@dataclass(frozen=True)
class XState:
    """Two-qubit density matrix with only diagonal + anti-diagonal entries."""

    p1: float
    p2: float
    p3: float
    p4: float
    c14: complex
    c23: complex

    def __post_init__(self):
        pops = (self.p1, self.p2, self.p3, self.p4)
        if min(pops) < -_POS_TOL:
            raise ValueError(f"negative population {min(pops)}")
        if abs(sum(pops) - 1.0) > _POS_TOL:
            raise ValueError(f"populations sum to {sum(pops)}, not 1")
        if abs(self.c14) ** 2 > self.p1 * self.p4 + _POS_TOL:
            raise ValueError("|c14|^2 > p1*p4 breaks positivity")
        if abs(self.c23) ** 2 > self.p2 * self.p3 + _POS_TOL:
            raise ValueError("|c23|^2 > p2*p3 breaks positivity")

    def populations(self) -> np.ndarray:
        return np.array([self.p1, self.p2, self.p3, self.p4])

    def matrix(self) -> np.ndarray:
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = self.populations()
        rho[0, 3], rho[3, 0] = self.c14, np.conj(self.c14)
        rho[1, 2], rho[2, 1] = self.c23, np.conj(self.c23)
        return rho

    def purity(self) -> float:
        return float(
            np.sum(self.populations() ** 2)
            + 2.0 * (abs(self.c14) ** 2 + abs(self.c23) ** 2)
        )


def ewl_initial(params: EWLParams) -> XState:
    """X-state form of the Werner-like initial state; purity (1+3r^2)/4."""
    q = (1.0 - params.r) / 4.0
    big = params.r * abs(params.mu) ** 2 + q
    small = params.r * abs(params.nu) ** 2 + q
    coh = params.r * params.mu * np.conj(params.nu)
    if params.kind == "psi":
        return XState(p1=big, p2=q, p3=q, p4=small, c14=coh, c23=0.0 + 0j)
    return XState(p1=q, p2=big, p3=small, p4=q, c14=0.0 + 0j, c23=coh)


def propagate_x_state(initial: XState, c_a: complex, c_b: complex) -> XState:
    """Apply the local amplitude maps with amplitudes c_a, c_b to an X state."""
    if abs(c_a) > 1.0 + 1e-9 or abs(c_b) > 1.0 + 1e-9:
        raise ValueError(f"channel amplitudes must have |c| <= 1, got {abs(c_a)}, {abs(c_b)}")
    a, b = abs(c_a) ** 2, abs(c_b) ** 2
    p1 = initial.p1 * a * b
    p2 = initial.p2 * a + initial.p1 * a * (1.0 - b)
    p3 = initial.p3 * b + initial.p1 * b * (1.0 - a)
    p4 = 1.0 - p1 - p2 - p3
    return XState(
        p1=p1, p2=p2, p3=p3, p4=max(p4, 0.0),
        c14=initial.c14 * c_a * c_b,
        c23=initial.c23 * c_a * np.conj(c_b),
    )


def _concurrence_arrays(p1, p2, p3, p4, m14, m23):
    l1 = m14 - np.sqrt(np.maximum(p2 * p3, 0.0))
    l2 = m23 - np.sqrt(np.maximum(p1 * p4, 0.0))
    return 2.0 * np.maximum(0.0, np.maximum(l1, l2))


def _xlog2x(v):
    v = np.asarray(v, dtype=float)
    return np.where(v > 0.0, v * np.log2(np.where(v > 0.0, v, 1.0)), 0.0)


def _h2(x):
    x = np.clip(x, 0.0, 1.0)
    return -(_xlog2x(x) + _xlog2x(1.0 - x))


def _discord_arrays(p1, p2, p3, p4, m14, m23):
    """Analytic X-state discord (measurement on qubit B, log base 2).

    D = min(D1, D2), D_j = S(rho_B) - S(rho) + d_j with the conditional
    entropies d_1 = h(tau) for an equatorial measurement and
    d_2 = -S(rho_B) - sum_i p_ii log p_ii for the computational one. The
    eigenvalues come from the two 2x2 anti-diagonal blocks.
    """
    lam_a = 0.5 * (p1 + p4)
    dev_a = np.sqrt(0.25 * (p1 - p4) ** 2 + m14**2)
    lam_b = 0.5 * (p2 + p3)
    dev_b = np.sqrt(0.25 * (p2 - p3) ** 2 + m23**2)
    eig = np.stack([lam_a + dev_a, lam_a - dev_a, lam_b + dev_b, lam_b - dev_b])
    s_b = _h2(p1 + p3)
    sum_lam = np.sum(_xlog2x(np.clip(eig, 0.0, 1.0)), axis=0)
    tau = 0.5 * (1.0 + np.sqrt((p1 + p2 - p3 - p4) ** 2 + 4.0 * (m14 + m23) ** 2))
    d1 = _h2(tau)
    d2 = -s_b - np.sum(_xlog2x(np.clip(np.stack([p1, p2, p3, p4]), 0.0, 1.0)), axis=0)
    return np.maximum(0.0, s_b + sum_lam + np.minimum(d1, d2))


def concurrence(state: XState) -> float:
    """Entanglement of an X state: 2 max{0, |c14| - sqrt(p2 p3), |c23| - sqrt(p1 p4)}."""
    return float(
        _concurrence_arrays(
            state.p1, state.p2, state.p3, state.p4, abs(state.c14), abs(state.c23)
        )
    )


def discord(state: XState) -> float:
    """Quantum discord of an X state (analytic two-branch minimization)."""
    return float(
        _discord_arrays(
            state.p1, state.p2, state.p3, state.p4, abs(state.c14), abs(state.c23)
        )
    )


def coherence_l1_two(state: XState) -> float:
    """l1 coherence in the computational basis: 2(|c14| + |c23|)."""
    return 2.0 * (abs(state.c14) + abs(state.c23))


@dataclass
class TwoQubitSeries:
    """Resource quantifiers sampled along a trajectory (identical subsystems)."""

    times: np.ndarray
    concurrence: np.ndarray
    discord: np.ndarray
    zeta2: np.ndarray


def resource_time_series(
    ewl: EWLParams, traj: AmplitudeTrajectory, stride: int = 1
) -> TwoQubitSeries:
    """Concurrence, discord and two-qubit coherence vs time for two identical
    qubits sharing the trajectory's amplitude as their local channel."""
    if stride < 1:
        raise ValueError("stride must be >= 1")
    init = ewl_initial(ewl)
    t = traj.times[::stride]
    c = traj.amplitudes[::stride]
    a = np.abs(c) ** 2
    p1 = init.p1 * a * a
    p2 = init.p2 * a + init.p1 * a * (1.0 - a)
    p3 = init.p3 * a + init.p1 * a * (1.0 - a)
    p4 = 1.0 - p1 - p2 - p3
    m14 = abs(init.c14) * a
    m23 = abs(init.c23) * a
    return TwoQubitSeries(
        times=t,
        concurrence=_concurrence_arrays(p1, p2, p3, p4, m14, m23),
        discord=_discord_arrays(p1, p2, p3, p4, m14, m23),
        zeta2=2.0 * (m14 + m23),
    )
