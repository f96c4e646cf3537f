import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fmqubit import (
    EWLParams,
    ModulationDrive,
    QubitCavityParams,
    SolverConfig,
    XState,
    coherence_l1_two,
    concurrence,
    discord,
    ewl_initial,
    lifetime,
    propagate_x_state,
    resource_time_series,
    solve_amplitude,
)
from oracles import discord_brute_force, random_x_state_arrays

SQ2 = 1.0 / math.sqrt(2.0)

# min over the two measurement branches for the r = 1/2 Werner state,
# cross-checked against the brute-force minimization (frozen)
WERNER_HALF_DISCORD = 0.26248318376373436


def bell(kind):
    return EWLParams(kind=kind, r=1.0, mu=SQ2)


def xstate_from_arrays(p, c14, c23):
    return XState(p1=p[0], p2=p[1], p3=p[2], p4=p[3], c14=c14, c23=c23)


ewl_strategy = st.builds(
    EWLParams,
    kind=st.sampled_from(["psi", "phi"]),
    r=st.floats(0.0, 1.0),
    mu=st.floats(0.0, 1.0).map(lambda m: complex(m)),
)


class TestEWLInitial:
    def test_bell_state(self):
        x = ewl_initial(bell("psi"))
        assert x.p1 == pytest.approx(0.5, abs=1e-15)
        assert x.p4 == pytest.approx(0.5, abs=1e-15)
        assert (x.p2, x.p3) == (0.0, 0.0)
        assert abs(x.c14) == pytest.approx(0.5)
        assert x.c23 == 0.0

    def test_maximally_mixed(self):
        x = ewl_initial(EWLParams(kind="phi", r=0.0, mu=SQ2))
        assert np.allclose(x.matrix(), np.eye(4) / 4.0)

    @settings(max_examples=60)
    @given(ewl=ewl_strategy)
    def test_purity_formula(self, ewl):
        x = ewl_initial(ewl)
        assert x.purity() == pytest.approx((1.0 + 3.0 * ewl.r**2) / 4.0, abs=1e-12)

    def test_nu_defaults_to_normalization(self):
        ewl = EWLParams(kind="psi", r=0.7, mu=0.6)
        assert ewl.nu == pytest.approx(0.8)

    def test_rejects_bad_normalization(self):
        with pytest.raises(ValueError):
            EWLParams(kind="psi", r=0.5, mu=0.9, nu=0.9)
        with pytest.raises(ValueError):
            EWLParams(kind="psi", r=1.5, mu=SQ2)
        with pytest.raises(ValueError):
            EWLParams(kind="bell", r=0.5, mu=SQ2)


class TestXStateValidation:
    def test_rejects_negative_population(self):
        with pytest.raises(ValueError):
            XState(p1=-0.1, p2=0.4, p3=0.4, p4=0.3, c14=0.0, c23=0.0)

    def test_rejects_trace_violation(self):
        with pytest.raises(ValueError):
            XState(p1=0.5, p2=0.5, p3=0.5, p4=0.0, c14=0.0, c23=0.0)

    def test_rejects_positivity_violation(self):
        with pytest.raises(ValueError):
            XState(p1=0.25, p2=0.25, p3=0.25, p4=0.25, c14=0.3, c23=0.0)


class TestPropagation:
    def test_identity_channel(self):
        x0 = ewl_initial(EWLParams(kind="psi", r=0.8, mu=0.6))
        x1 = propagate_x_state(x0, 1.0, 1.0)
        assert np.allclose(x1.matrix(), x0.matrix())

    def test_complete_decay(self):
        x1 = propagate_x_state(ewl_initial(bell("psi")), 0.0, 0.0)
        assert x1.p4 == pytest.approx(1.0)
        assert x1.p1 == x1.p2 == x1.p3 == 0.0
        assert x1.c14 == 0.0 and x1.c23 == 0.0

    def test_phi_bell_channel_map(self):
        c = 0.6 + 0.3j
        x1 = propagate_x_state(ewl_initial(bell("phi")), c, c)
        a = abs(c) ** 2
        assert abs(x1.c23) == pytest.approx(a / 2.0)
        assert x1.p2 == pytest.approx(a / 2.0)
        assert x1.p3 == pytest.approx(a / 2.0)
        assert x1.p1 == 0.0

    def test_rejects_super_unitary(self):
        with pytest.raises(ValueError):
            propagate_x_state(ewl_initial(bell("psi")), 1.2, 0.5)

    @settings(max_examples=80)
    @given(data=st.data())
    def test_preserves_validity(self, data, rng):
        p, c14, c23 = random_x_state_arrays(rng)
        ca = data.draw(st.complex_numbers(max_magnitude=1.0, allow_nan=False))
        cb = data.draw(st.complex_numbers(max_magnitude=1.0, allow_nan=False))
        out = propagate_x_state(xstate_from_arrays(p, c14, c23), ca, cb)
        # XState.__post_init__ enforces trace and block positivity; purity
        # cannot exceed 1
        assert out.purity() <= 1.0 + 1e-9

    def test_semigroup_composition(self, rng):
        # real channel amplitudes compose multiplicatively
        for _ in range(20):
            p, c14, c23 = random_x_state_arrays(rng)
            x0 = xstate_from_arrays(p, c14, c23)
            c1, c2 = rng.uniform(0.0, 1.0, size=2)
            stepwise = propagate_x_state(propagate_x_state(x0, c1, c1), c2, c2)
            direct = propagate_x_state(x0, c1 * c2, c1 * c2)
            assert np.allclose(stepwise.matrix(), direct.matrix(), atol=1e-12)


class TestConcurrence:
    @pytest.mark.parametrize("kind", ["psi", "phi"])
    def test_bell_state(self, kind):
        assert concurrence(ewl_initial(bell(kind))) == pytest.approx(1.0)

    @settings(max_examples=60)
    @given(ewl=ewl_strategy)
    def test_initial_value_formula(self, ewl):
        expected = 2.0 * max(
            0.0, (abs(ewl.mu * ewl.nu) + 0.25) * ewl.r - 0.25
        )
        assert concurrence(ewl_initial(ewl)) == pytest.approx(expected, abs=1e-12)

    def test_low_purity_never_entangled(self):
        x0 = ewl_initial(EWLParams(kind="psi", r=0.3, mu=SQ2))
        for c in (1.0, 0.9, 0.5, 0.2, 0.0):
            assert concurrence(propagate_x_state(x0, c, c)) == 0.0


class TestDiscord:
    def test_classical_diagonal_state(self):
        x = XState(p1=0.4, p2=0.3, p3=0.2, p4=0.1, c14=0.0, c23=0.0)
        assert discord(x) == 0.0

    @pytest.mark.parametrize("kind", ["psi", "phi"])
    def test_bell_state(self, kind):
        assert discord(ewl_initial(bell(kind))) == pytest.approx(1.0, abs=1e-12)

    def test_werner_half(self):
        x = ewl_initial(EWLParams(kind="psi", r=0.5, mu=SQ2))
        assert discord(x) == pytest.approx(WERNER_HALF_DISCORD, abs=1e-12)
        assert discord_brute_force(x.matrix(), n_grid=60) == pytest.approx(
            WERNER_HALF_DISCORD, abs=1e-6
        )

    def test_against_measurement_minimization(self, rng):
        worst = 0.0
        for _ in range(10):
            p, c14, c23 = random_x_state_arrays(rng)
            x = xstate_from_arrays(p, c14, c23)
            worst = max(worst, abs(discord(x) - discord_brute_force(x.matrix(), n_grid=60)))
        assert worst < 1e-3


class TestTwoQubitCoherence:
    @settings(max_examples=60)
    @given(ewl=ewl_strategy)
    def test_initial_value(self, ewl):
        assert coherence_l1_two(ewl_initial(ewl)) == pytest.approx(
            2.0 * ewl.r * abs(ewl.mu * ewl.nu), abs=1e-12
        )

    def test_bell_state(self):
        assert coherence_l1_two(ewl_initial(bell("phi"))) == pytest.approx(1.0)

    def test_diagonal_state(self):
        x = XState(p1=0.4, p2=0.3, p3=0.2, p4=0.1, c14=0.0, c23=0.0)
        assert coherence_l1_two(x) == 0.0


class TestResourceTimeSeries:
    def test_phi_concurrence_equals_coherence(self, traj_strong_undriven):
        series = resource_time_series(bell("phi"), traj_strong_undriven)
        assert np.array_equal(series.concurrence, series.zeta2)

    def test_matches_pointwise_quantifiers(self, traj_strong_undriven):
        ewl = EWLParams(kind="psi", r=0.8, mu=0.6)
        series = resource_time_series(ewl, traj_strong_undriven, stride=100)
        x0 = ewl_initial(ewl)
        for k, t in enumerate(series.times):
            c = complex(traj_strong_undriven.amplitudes[::100][k])
            x = propagate_x_state(x0, c, c)
            assert series.concurrence[k] == pytest.approx(concurrence(x), abs=1e-12)
            assert series.discord[k] == pytest.approx(discord(x), abs=1e-12)
            assert series.zeta2[k] == pytest.approx(coherence_l1_two(x), abs=1e-12)

    def test_psi_resources_die_before_phi(self, traj_strong_undriven):
        eps = 1e-2
        lifetimes = {}
        for kind in ("psi", "phi"):
            s = resource_time_series(bell(kind), traj_strong_undriven)
            lifetimes[kind] = (
                lifetime(s.times, s.concurrence, eps).lifetime,
                lifetime(s.times, s.discord, eps).lifetime,
            )
        assert lifetimes["psi"][0] <= lifetimes["phi"][0]
        assert lifetimes["psi"][1] <= lifetimes["phi"][1]

    def test_stride_validation(self, traj_strong_undriven):
        with pytest.raises(ValueError):
            resource_time_series(bell("psi"), traj_strong_undriven, stride=0)


def test_driven_strong_coupling_extends_two_qubit_lifetimes(traj_strong_undriven):
    """Modulated qubits keep Bell-state resources far beyond the undriven decay."""
    driven = solve_amplitude(
        QubitCavityParams(lam=0.01), ModulationDrive(12.02415, 5.0),
        SolverConfig(t_max=1500.0),
    )
    for kind in ("psi", "phi"):
        off = resource_time_series(bell(kind), traj_strong_undriven)
        on = resource_time_series(bell(kind), driven)
        assert np.min(on.zeta2) > 0.9  # still essentially intact
        assert lifetime(off.times, off.zeta2, 1e-2).lifetime < 500.0
