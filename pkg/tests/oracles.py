"""Independent reference implementations used only to check the package.

These deliberately avoid the code paths they validate: discord is minimized
numerically over projective measurements, and the backflow measure is summed
from the rises of |C| rather than integrated through the decay rate.
"""
import numpy as np
from scipy.optimize import minimize

_EYE2 = np.eye(2)
_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def _entropy_2x2_batch(rho):
    """Von Neumann entropy (base 2) of a batch of 2x2 Hermitian matrices."""
    tr = np.real(rho[..., 0, 0] + rho[..., 1, 1])
    det = np.real(
        rho[..., 0, 0] * rho[..., 1, 1] - rho[..., 0, 1] * rho[..., 1, 0]
    )
    disc = np.sqrt(np.maximum(0.25 * tr * tr - det, 0.0))
    ev = np.stack([0.5 * tr + disc, 0.5 * tr - disc], axis=-1)
    ev = np.clip(ev, 0.0, 1.0)
    terms = np.where(ev > 0, ev * np.log2(np.where(ev > 0, ev, 1.0)), 0.0)
    return -np.sum(terms, axis=-1)


def _entropy_full(rho):
    ev = np.clip(np.linalg.eigvalsh(rho).real, 0.0, 1.0)
    terms = np.where(ev > 0, ev * np.log2(np.where(ev > 0, ev, 1.0)), 0.0)
    return -float(np.sum(terms))


def _conditional_entropy_grid(rho, thetas, phis):
    """sum_k p_k S(rho_A|k) for projective measurements n.sigma on qubit B,
    over the full (theta, phi) grid at once."""
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    tt, pp = tt.ravel(), pp.ravel()
    n = np.stack(
        [np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1
    )
    proj_up = 0.5 * (
        _EYE2[None, :, :]
        + n[:, 0, None, None] * _SX
        + n[:, 1, None, None] * _SY
        + n[:, 2, None, None] * _SZ
    )
    total = np.zeros(len(tt))
    for sign in (1.0, -1.0):
        p2 = proj_up if sign > 0 else _EYE2[None, :, :] - proj_up
        m = np.einsum("ij,gkl->gikjl", _EYE2, p2).reshape(-1, 4, 4)
        sub = np.einsum("gij,jk,gkl->gil", m, rho, m)
        pk = np.real(np.einsum("gii->g", sub))
        safe = np.maximum(pk, 1e-300)
        rho_a = np.einsum("gabcb->gac", sub.reshape(-1, 2, 2, 2, 2)) / safe[:, None, None]
        ent = _entropy_2x2_batch(rho_a)
        total += np.where(pk > 1e-14, pk * ent, 0.0)
    return total


def discord_brute_force(rho, n_grid=100):
    """Quantum discord with measurement on qubit B, minimized over a
    projective-measurement angle grid plus a local refinement."""
    rho = np.asarray(rho, dtype=complex)
    rho_b = np.array(
        [
            [rho[0, 0] + rho[2, 2], rho[0, 1] + rho[2, 3]],
            [rho[1, 0] + rho[3, 2], rho[1, 1] + rho[3, 3]],
        ]
    )
    s_b = _entropy_full(rho_b)
    s_ab = _entropy_full(rho)

    thetas = np.linspace(0.0, np.pi, n_grid)
    phis = np.linspace(0.0, 2.0 * np.pi, n_grid, endpoint=False)
    vals = _conditional_entropy_grid(rho, thetas, phis)
    i = int(np.argmin(vals))
    best = float(vals[i])
    t0, p0 = thetas[i // n_grid], phis[i % n_grid]

    def single(x):
        return float(_conditional_entropy_grid(rho, np.array([x[0]]), np.array([x[1]]))[0])

    res = minimize(single, [t0, p0], method="Nelder-Mead",
                   options={"xatol": 1e-9, "fatol": 1e-13})
    best = min(best, float(res.fun))
    return max(0.0, s_b - s_ab + best)


def random_x_state_arrays(rng):
    """Populations plus anti-diagonal coherences of a random valid X state."""
    p = rng.dirichlet(np.ones(4))
    c14 = (
        np.sqrt(p[0] * p[3]) * rng.uniform(0.0, 1.0)
        * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    )
    c23 = (
        np.sqrt(p[1] * p[2]) * rng.uniform(0.0, 1.0)
        * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    )
    return p, c14, c23


def backflow_from_rises(traj):
    """Sum of the rises of |C| over the sample grid; equals the backflow
    measure because d|C|/dt = -Gamma |C| / 2."""
    d = np.diff(np.abs(traj.amplitudes))
    return float(np.sum(d[d > 0.0]))
