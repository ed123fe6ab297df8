import numpy as np
import pytest
from scipy.special import eval_laguerre

from landau_factor.analysis import (
    closed_loop_gauge_defect,
    drift_velocity,
    fit_loglog,
    geometric_phase_closed_loop,
    k_identity_defect,
    lab_frame_track,
    level_dependence,
    transition_probabilities,
    transition_sweep,
    wavepacket_center_track,
)
from landau_factor.drive_path import Circle, Line, SmoothPolyline, Stadium
from landau_factor.errors import ContractError
from landau_factor.fock_algebra import StateVector, basis_state, coherent_amplitudes, product_state
from landau_factor.propagator_factorization import assemble

CIRCLE = Circle.through_origin(1.0, 30 / 31)


def _ground(model):
    return basis_state(0, 0, model.trunc)


class TestClosedLoopPhase:
    @pytest.mark.parametrize("omega_d, sign", [(1.0, -1.0), (-1.0, 1.0)], ids=["ccw", "cw"])
    def test_beta_is_flux(self, small_model, omega_d, sign):
        rep = geometric_phase_closed_loop(Circle.through_origin(2.0, omega_d), small_model)
        # d = dR/2 sweeps a unit disc, enclosing flux pi in natural units
        assert rep.beta_geometric == pytest.approx(sign * np.pi, abs=1e-9)
        assert rep.beta_flux == pytest.approx(sign * np.pi, abs=1e-9)
        assert rep.m_residual < 1e-9

    def test_retraced_loop_has_no_phase(self, small_model):
        path = SmoothPolyline(waypoints=((0, 0), (1, 0.5), (0, 0)), duration=4.0)
        rep = geometric_phase_closed_loop(path, small_model)
        assert abs(rep.beta_geometric) < 1e-9 and rep.m_residual < 1e-9

    def test_epsilon_invariance(self, small_model):
        betas = [geometric_phase_closed_loop(CIRCLE, small_model, eps).beta_geometric for eps in (1.0, 0.2, 0.05)]
        assert np.ptp(betas) < 1e-8

    def test_dynamical_phase(self, small_model):
        rep = geometric_phase_closed_loop(CIRCLE, small_model, 0.5)
        n = np.arange(small_model.trunc.interior_a)
        assert np.allclose(rep.dynamical_phase, -(n + 0.5) * rep.t_final)

    def test_open_path_rejected(self, small_model):
        with pytest.raises(ContractError):
            geometric_phase_closed_loop(Line(velocity=(1, 0)), small_model)


class TestTransitions:
    @pytest.mark.parametrize("n", [0, 1, 4])
    def test_exact_laguerre_survival(self, small_model, n):
        p = small_model.params
        path = CIRCLE.rescaled(0.2)
        bundle = assemble(small_model, path, path.t_final)
        probs, out, leak = transition_probabilities(bundle.u, n)
        x = p.kappa * abs(bundle.alpha_tilde) ** 2 / (8 * p.hbar)
        survival = np.exp(-x) * eval_laguerre(n, x) ** 2
        assert probs[n] == pytest.approx(survival, abs=1e-10)
        assert out == pytest.approx(1 - survival, abs=1e-10)
        assert leak < 1e-12

    def test_gauge_does_not_change_probabilities(self, small_model):
        path = Stadium(straight=0.8, radius=0.4, speed=0.6)
        bundle = assemble(small_model, path, path.t_final)
        assert closed_loop_gauge_defect(bundle) < 1e-9
        a, _, _ = transition_probabilities(bundle.u, 2)
        b, _, _ = transition_probabilities(bundle.u_l, 2)
        assert max(abs(a[k] - b[k]) for k in a) < 1e-12

    def test_sweep_scaling_and_bookkeeping(self, small_model):
        eps = (0.1, 0.05, 0.025)
        reps = transition_sweep(CIRCLE, small_model, 0, eps[::-1])
        assert [r.epsilon for r in reps] == sorted(eps)
        for r in reps:
            assert r.bookkeeping_defect < 1e-10
            assert r.most_probable == 0
            assert r.total_out == pytest.approx(1 - r.survival, abs=1e-12)
        assert reps[0].fitted_slope == pytest.approx(2.0, abs=0.1)
        assert reps[0].fitted_slope == fit_loglog([r.epsilon for r in reps], [r.total_out for r in reps])

    def test_parallel_matches_serial(self, small_model):
        eps = (0.1, 0.05)
        serial = transition_sweep(CIRCLE, small_model, 1, eps)
        parallel = transition_sweep(CIRCLE, small_model, 1, eps, workers=2)
        assert [(r.epsilon, r.probabilities) for r in serial] == [(r.epsilon, r.probabilities) for r in parallel]

    def test_level_outside_interior_rejected(self, small_model):
        with pytest.raises(ContractError):
            transition_sweep(CIRCLE, small_model, small_model.trunc.interior_a, (0.1,))
        with pytest.raises(ContractError):
            level_dependence(CIRCLE, small_model, (0, small_model.trunc.interior_a))

    def test_open_sweep_rejected(self, small_model):
        with pytest.raises(ContractError):
            transition_sweep(Line(velocity=(1, 0)), small_model, 0, (0.1,))

    def test_k_defect_shrinks_with_epsilon(self, small_model):
        d = [k_identity_defect(CIRCLE, small_model, e) for e in (0.1, 0.05, 0.025)]
        assert d[0] > d[1] > d[2]


def test_level_dependence_is_linear(small_model):
    rep = level_dependence(Circle.through_origin(0.1, 30 / 31), small_model, (1, 2, 5), epsilon=0.05)
    assert rep.levels == (0, 1, 2, 5)
    assert rep.max_dev_linear < 1e-3
    assert np.allclose(rep.p_out, rep.first_order, rtol=1e-3)
    # n^2 misses badly at low n
    assert rep.max_dev_n2 > 0.3


class TestCenterTrack:
    def test_coherent_state_orbits_without_drift(self, small_model):
        trunc = small_model.trunc
        psi = product_state(coherent_amplitudes(1.0, trunc.na), np.eye(trunc.nb)[0], trunc)
        period = 2 * np.pi / small_model.params.omega
        grid = np.linspace(0, period, 9)
        track = np.array(wavepacket_center_track(Line(duration=period), small_model, psi, grid))
        xy = track[:, 1:]
        radii = np.hypot(*(xy - xy[:-1].mean(axis=0)).T)
        assert np.ptp(radii) < 1e-8 and radii[0] > 0.5
        assert np.allclose(xy[0], xy[-1], atol=1e-10)
        assert np.allclose(drift_velocity(track), 0, atol=1e-10)

    def test_closed_loop_returns_near_start(self, small_model):
        path = CIRCLE.rescaled(0.02)
        bundle = assemble(small_model, path, path.t_final)
        track = wavepacket_center_track(path, small_model, _ground(small_model), [0.0, path.t_final])
        shift = np.hypot(track[1][1] - track[0][1], track[1][2] - track[0][2])
        assert shift <= abs(bundle.alpha_tilde) / 2 + 1e-9

    def test_drift_matches_lab_frame(self, small_model):
        v = 0.2
        period = 2 * np.pi / small_model.params.omega
        path = Line(velocity=(v, 0.0), duration=2 * period)
        grid = np.linspace(0, path.t_final, 5)
        track = wavepacket_center_track(path, small_model, _ground(small_model), grid)
        lab = lab_frame_track(path, small_model, _ground(small_model), grid, dt=1e-2)
        assert np.allclose(np.array(track), np.array(lab), atol=1e-7)
        assert drift_velocity(track) == pytest.approx([v / 2, 0.0], abs=1e-9)

    def test_initial_state_validated(self, small_model):
        bad = StateVector(2 * _ground(small_model).amplitudes, small_model.trunc)
        with pytest.raises(ContractError):
            wavepacket_center_track(CIRCLE, small_model, bad, [0.0])
        edge = basis_state(small_model.trunc.na - 1, 0, small_model.trunc)
        with pytest.raises(ContractError):
            wavepacket_center_track(CIRCLE, small_model, edge, [0.0])
