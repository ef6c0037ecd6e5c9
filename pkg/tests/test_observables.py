import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdjc import (
    JointState,
    UndefinedStatisticsError,
    atomic_inversion,
    entanglement,
    evolve_excited,
    fidelity,
    field_moment,
    inversion_closed_form,
    mandel_q,
    observable_series,
    squeezing,
    wha_moments,
)
from pdjc.dynamics import initial_excited
from pdjc.observables import _binary_entropy

from helpers import make_field, make_params, scaled_grid

LN2 = math.log(2.0)


def poisson_joint_state(mean, params, n_blocks=40):
    # photon-number distribution Poisson(mean) spread over both sectors;
    # at lam = 0 the deformed number operator is the plain one, so Q = 0
    weights = np.array([math.exp(-mean + k * math.log(mean) - math.lgamma(k + 1.0))
                        for k in range(2 * n_blocks)])
    c_plus = np.sqrt(weights[0::2])
    c_minus = np.sqrt(weights[1::2])
    tail = 1.0 - float(weights.sum())
    return JointState(time=0.0, c_plus=c_plus, c_minus=c_minus, params=params, tail_mass=tail)


class TestAtomicInversion:
    def test_excited_start(self):
        field = make_field(30.0, 0.0)
        params = make_params()
        state = evolve_excited(field, params, 0.0)
        assert abs(atomic_inversion(state) - (1.0 - field.tail_mass)) < 1e-12

    def test_vacuum_field_rabi_cosine(self):
        lam = 2.0
        field = make_field(0.0, lam)
        params = make_params(lam=lam, delta=0.0, g=0.03)
        for t in (0.0, 7.0, 31.0):
            state = evolve_excited(field, params, t)
            expected = math.cos(2 * 0.03 * math.sqrt(2 * lam + 1.0) * t)
            assert abs(atomic_inversion(state) - expected) < 1e-13

    def test_closed_form_cross_check(self):
        field = make_field(30.0, 50.0)
        params = make_params(lam=50.0, delta=0.01)
        times = scaled_grid(params.g, n_points=2001)
        series = observable_series(field, params, times)
        closed = inversion_closed_form(field, params, times)
        assert np.abs(series.inversion - closed).max() < 1e-12

    def test_closed_form_uncoupled(self):
        field = make_field(4.0, 0.0)
        params = make_params(g=0.0, delta=0.0)
        closed = inversion_closed_form(field, params, np.array([0.0, 5.0]))
        np.testing.assert_allclose(closed, 1.0 - field.tail_mass, atol=1e-14)


class TestFidelity:
    def test_self_overlap(self):
        field = make_field(9.0, 10.0)
        params = make_params(lam=10.0, delta=0.1)
        state = evolve_excited(field, params, 0.0)
        assert abs(fidelity(state, state) - (1.0 - field.tail_mass) ** 2) < 1e-12

    def test_orthogonal(self):
        params = make_params()
        a = JointState(0.0, np.array([1.0 + 0j, 0j]), np.array([0j, 0j]), params)
        b = JointState(0.0, np.array([0j, 1.0 + 0j]), np.array([0j, 0j]), params)
        assert fidelity(a, b) == 0.0

    def test_near_unity_return_window(self):
        # strong deformation, weak coupling: the overlap comes back close
        # to one at an isolated scaled time near gt ~ 95
        field = make_field(9.0, 100.0)
        params = make_params(lam=100.0, delta=0.1)
        times = scaled_grid(params.g, n_points=2001)
        series = observable_series(field, params, times)
        window = (times * params.g >= 80.0) & (times * params.g <= 110.0)
        assert series.fidelity[window].max() > 0.9

    def test_dimension_mismatch(self):
        params = make_params()
        a = JointState(0.0, np.array([1.0 + 0j]), np.array([0j]), params)
        b = JointState(0.0, np.array([1.0 + 0j, 0j]), np.array([0j, 0j]), params)
        with pytest.raises(ValueError):
            fidelity(a, b)


class TestEntanglement:
    def test_product_state(self):
        field = make_field(9.0, 0.0)
        state = evolve_excited(field, make_params(), 0.0)
        report = entanglement(state)
        assert report.entropy < 1e-12
        assert abs(report.g_plus + report.g_minus - (1.0 - field.tail_mass)) < 1e-12

    def test_maximally_mixed_value(self):
        assert math.isclose(_binary_entropy(0.5, 0.5), LN2, rel_tol=1e-15)

    def test_entropy_symmetry(self):
        for g in (0.0, 0.1, 0.25, 0.4999):
            assert _binary_entropy(g, 1.0 - g) == _binary_entropy(1.0 - g, g)

    def test_reaches_near_maximal(self):
        field = make_field(9.0, 50.0)
        params = make_params(lam=50.0, delta=0.1)
        series = observable_series(field, params, scaled_grid(params.g, n_points=2001))
        assert series.entropy.max() >= 0.99 * LN2

    def test_fidelity_peaks_are_separable(self):
        # where the overlap with the initial state passes a sharp maximum,
        # the atom and field disentangle; entropy can reach the continuity
        # bound -(1-F)ln(1-F) - F ln F, so peaks need F > 0.99 for the
        # 0.1*ln2 cap to be guaranteed
        field = make_field(9.0, 100.0)
        params = make_params(lam=100.0, delta=0.1)
        series = observable_series(field, params, scaled_grid(params.g, n_points=2001))
        fid = series.fidelity
        top = int(np.argmax(fid[1:])) + 1
        assert fid[top] > 0.99
        assert series.entropy[top] < 0.1 * LN2
        interior = np.arange(1, fid.size - 1)
        peaks = interior[(fid[1:-1] > fid[:-2]) & (fid[1:-1] > fid[2:]) & (fid[1:-1] > 0.99)]
        assert peaks.size > 0
        assert np.all(series.entropy[peaks] < 0.1 * LN2)


class TestFieldMoments:
    def test_vacuum(self):
        field = make_field(0.0, 0.0)
        state = evolve_excited(field, make_params(), 0.0)
        for k in (1, 2, 3):
            assert field_moment(state, k) == 0.0

    def test_even_cat_first_two_moments(self):
        # lam = 0, x = |w|^2: <n> = x tanh x, <n^2> = x tanh x + x^2
        field = make_field(1.0, 0.0)
        state = evolve_excited(field, make_params(), 0.0)
        assert abs(field_moment(state, 1) - math.tanh(1.0)) < 1e-12
        assert abs(field_moment(state, 2) - (math.tanh(1.0) + 1.0)) < 1e-12

    def test_order_validation(self):
        field = make_field(1.0, 0.0)
        state = evolve_excited(field, make_params(), 0.0)
        with pytest.raises(ValueError):
            field_moment(state, 0)


class TestMandelQ:
    def test_even_cat_anchor(self):
        field = make_field(1.0, 0.0)
        state = evolve_excited(field, make_params(), 0.0)
        report = mandel_q(state)
        expected = 1.0 / math.tanh(1.0) - math.tanh(1.0)
        assert abs(report.mandel_q - expected) < 1e-10

    def test_poissonian_is_zero(self):
        state = poisson_joint_state(4.0, make_params(lam=0.0))
        assert abs(mandel_q(state).mandel_q) < 1e-8

    def test_vacuum_undefined(self):
        field = make_field(0.0, 0.0)
        state = evolve_excited(field, make_params(), 0.0)
        with pytest.raises(UndefinedStatisticsError):
            mandel_q(state)

    def test_super_poissonian_run(self):
        field = make_field(20.0, 10.0)
        params = make_params(lam=10.0, delta=0.01)
        series = observable_series(field, params, scaled_grid(params.g, n_points=801))
        assert np.nanmin(series.mandel_q) > 0.0

    @given(theta=st.floats(min_value=-math.pi, max_value=math.pi))
    @settings(max_examples=25, deadline=None)
    def test_global_phase_invariance(self, theta):
        field = make_field(9.0, 2.0)
        params = make_params(lam=2.0, delta=0.1)
        state = evolve_excited(field, params, 40.0)
        rotated = JointState(
            time=state.time,
            c_plus=state.c_plus * cmath.exp(1j * theta),
            c_minus=state.c_minus * cmath.exp(1j * theta),
            params=params,
            tail_mass=state.tail_mass,
        )
        assert abs(mandel_q(rotated).mandel_q - mandel_q(state).mandel_q) < 1e-12


class TestWhaMoments:
    def test_commutator_mean_at_start(self):
        lam = 7.0
        field = make_field(9.0, lam)
        state = evolve_excited(field, make_params(lam=lam), 0.0)
        m = wha_moments(state)
        assert abs(m.m_comm - (1.0 + 2 * lam) * (1.0 - field.tail_mass)) < 1e-12

    def test_first_moment_vanishes(self):
        field = make_field(9.0, 3.0)
        state = evolve_excited(field, make_params(lam=3.0, delta=0.1), 12.0)
        assert wha_moments(state).m_a == 0.0

    def test_commutation_identity_along_run(self):
        field = make_field(20.0, 10.0)
        params = make_params(lam=10.0, delta=0.01)
        series = observable_series(field, params, scaled_grid(params.g, n_points=501))
        dev = np.abs(series.mean_aad - series.mean_n - series.mean_comm)
        assert dev.max() < 1e-12

    def test_squared_annihilation_on_vacuum_block(self):
        field = make_field(0.0, 1.0)
        state = evolve_excited(field, make_params(lam=1.0), 3.0)
        assert wha_moments(state).m_a2 == 0.0


class TestSqueezing:
    def test_vacuum_saturates_undeformed_bound(self):
        field = make_field(0.0, 0.0)
        state = evolve_excited(field, make_params(), 0.0)
        report = squeezing(state)
        assert math.isclose(report.sigma_xx, 0.5, rel_tol=1e-14)
        assert math.isclose(report.sigma_pp, 0.5, rel_tol=1e-14)
        assert report.s_x == 0.0
        assert report.s_p == 0.0
        assert report.uncertainty_ok

    def test_quadrature_exchange_under_quarter_turn(self):
        # shifting the cat phase by pi/2 flips the sign of <a^2>, which
        # swaps the x and p squeezing factors at every time
        params = make_params(lam=5.0, delta=0.1)
        times = scaled_grid(params.g, n_points=301)
        flat = observable_series(make_field(9.0, 5.0, phase=0.0), params, times)
        turned = observable_series(make_field(9.0, 5.0, phase=math.pi / 2), params, times)
        np.testing.assert_allclose(turned.s_x, flat.s_p, atol=1e-10)
        np.testing.assert_allclose(turned.s_p, flat.s_x, atol=1e-10)

    def test_momentum_squeezing_appears(self):
        params = make_params(lam=5.0, delta=0.1)
        series = observable_series(make_field(9.0, 5.0), params, scaled_grid(params.g, n_points=2001))
        assert series.s_p.min() < 0.0

    def test_uncertainty_relation_holds(self):
        for lam, mod_sq, delta in ((0.0, 30.0, 0.0), (5.0, 9.0, 0.1), (-0.25, 20.0, 0.01)):
            params = make_params(lam=lam, delta=delta)
            series = observable_series(make_field(mod_sq, lam), params, scaled_grid(params.g, n_points=401))
            assert np.all(series.sigma_xx * series.sigma_pp >= series.bound**2 * (1 - 1e-10))

    def test_report_consistent_with_series(self):
        field = make_field(9.0, 5.0)
        params = make_params(lam=5.0, delta=0.1)
        t = 42.0
        report = squeezing(evolve_excited(field, params, t))
        series = observable_series(field, params, np.array([t]))
        assert abs(report.s_x - series.s_x[0]) < 1e-12
        assert abs(report.s_p - series.s_p[0]) < 1e-12
        assert abs(report.bound - series.bound[0]) < 1e-12


class TestSeriesAgainstSingleStates:
    def test_every_column_matches_pointwise_evaluation(self):
        field = make_field(9.0, 2.0)
        params = make_params(lam=2.0, delta=0.05)
        times = np.linspace(0.0, 900.0, 9)
        series = observable_series(field, params, times)
        initial = initial_excited(field, params)
        for i, t in enumerate(times):
            state = evolve_excited(field, params, float(t))
            report = entanglement(state)
            m = wha_moments(state)
            assert abs(series.inversion[i] - atomic_inversion(state)) < 1e-13
            assert abs(series.fidelity[i] - fidelity(initial, state)) < 1e-13
            assert abs(series.entropy[i] - report.entropy) < 1e-13
            assert abs(series.g_plus[i] - report.g_plus) < 1e-14
            assert abs(series.mean_n[i] - field_moment(state, 1)) < 1e-12
            assert abs(series.mean_n2[i] - field_moment(state, 2)) < 1e-11
            assert abs(series.mean_aad[i] - m.m_aad) < 1e-12
            assert abs(series.mean_comm[i] - m.m_comm) < 1e-12
            assert abs(series.a2[i] - m.m_a2) < 1e-12
