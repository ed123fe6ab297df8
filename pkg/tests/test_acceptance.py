"""Acceptance criteria at desk scale: natural units, na = nb = 48, buffer = 12.

Each test prints one ``criterion N: PASS|FAIL`` line with the measured
numbers, then asserts the same condition.
"""

import time

import numpy as np
import pytest

from landau_factor.analysis import (
    closed_loop_gauge_defect,
    displacement_check,
    drift_velocity,
    fit_loglog,
    geometric_phase_closed_loop,
    heisenberg_check,
    k_identity_defect,
    lab_frame_propagator,
    lab_frame_track,
    level_dependence,
    transition_sweep,
    wavepacket_center_track,
)
from landau_factor.drive_path import Circle, Line
from landau_factor.fock_algebra import (
    OperatorMatrix,
    Truncation,
    basis_state,
    commutator,
    interior_distance,
    restrict,
    unitarity_defect,
)
from landau_factor.landau_model import PhysicalParams, build_model, hamiltonian_builder
from landau_factor.propagator_factorization import assemble, factor_order_defect, path_ordered_phase_heisenberg
from landau_factor.reference_integrator import IntegratorConfig, propagate_reference

pytestmark = pytest.mark.slow

TRUNC = Truncation(48, 48, 12)
# a drive rate slightly off the cyclotron frequency keeps the loop's alpha away from an exact zero
RATE = 30 / 31
LOOP = Circle.through_origin(1.0, RATE)
SWEEP_EPS = (0.1, 0.05, 0.025, 0.0125)


@pytest.fixture(scope="module")
def report(request):
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def emit(number, passed, detail):
        with capman.global_and_fixture_disabled():
            print(f"\ncriterion {number}: {'PASS' if passed else 'FAIL'}  {detail}", flush=True)
        return passed

    return emit


@pytest.fixture(scope="module")
def model():
    return build_model(PhysicalParams.natural(), (0.0, 0.0), TRUNC)


@pytest.fixture(scope="module")
def loop_run(model):
    path = LOOP.rescaled(0.1)
    return path, assemble(model, path, path.t_final)


def _reference(model, path, dt, order):
    big = model.with_trunc(TRUNC.padded(8))
    cfg = IntegratorConfig(dt, path.t_final, order, breakpoints=path.breakpoints())
    return restrict(propagate_reference(hamiltonian_builder(big, path), cfg).u_ref, TRUNC)


def test_criterion_1_algebra(report):
    start = time.perf_counter()
    m = build_model(PhysicalParams.natural(), (0.0, 0.0), TRUNC)
    ident = OperatorMatrix.identity(TRUNC)
    residuals = {
        "[pi1,pi2]": interior_distance(commutator(m.pi1, m.pi2), ident.scaled(1j, m.pi1.unit * m.pi1.unit)),
        "[eta1,eta2]": interior_distance(commutator(m.eta1, m.eta2), ident.scaled(-1j, m.eta1.unit * m.eta1.unit)),
        "[pi,eta]": max(interior_distance(a @ b, b @ a) for a in (m.pi1, m.pi2) for b in (m.eta1, m.eta2)),
    }
    ia = TRUNC.interior_a
    levels = np.linalg.eigvalsh(m.h0_from_momenta.mode_factor("A")[:ia, :ia])
    residuals["h0 spectrum"] = float(np.max(np.abs(levels - (np.arange(ia) + 0.5))))
    elapsed = time.perf_counter() - start
    ok = max(residuals.values()) <= 1e-10 and elapsed < 5
    detail = ", ".join(f"{k} {v:.1e}" for k, v in residuals.items())
    assert report(1, ok, f"{detail} (tol 1e-10); {elapsed:.2f} s (< 5 s)")


def test_criterion_2_factorization_vs_oracle(model, loop_run, report):
    path, bundle = loop_run
    start = time.perf_counter()
    main = interior_distance(_reference(model, path, 1e-3, 4), bundle.u)
    slopes = {}
    for order, dts in ((2, (0.04, 0.02, 0.01)), (4, (0.4, 0.2, 0.1))):
        errs = [interior_distance(_reference(model, path, dt, order), bundle.u) for dt in dts]
        slopes[order] = fit_loglog(dts, errs)
    elapsed = time.perf_counter() - start
    ok = main <= 1e-6 and abs(slopes[2] - 2) <= 0.2 and abs(slopes[4] - 4) <= 0.4 and elapsed < 120
    assert report(
        2,
        ok,
        f"||P(U_fact - U_ref)P|| = {main:.2e} at dt=1e-3 (tol 1e-6); "
        f"slopes {slopes[2]:.3f} (2 +- 0.2), {slopes[4]:.3f} (4 +- 0.4); {elapsed:.0f} s (< 120 s)",
    )


def test_criterion_3_heisenberg(model, loop_run, report):
    path, bundle = loop_run
    h = heisenberg_check(bundle, model).worst
    d = displacement_check(bundle, model).worst
    ok = h <= 1e-7 and d <= 1e-8
    # mid-loop the guiding centre sits a diameter away; a 12-level buffer no
    # longer holds the displaced eta, a 24-level one does
    half = 0.5 * path.t_final
    mid = heisenberg_check(assemble(model, path, half), model).worst
    wide = build_model(model.params, (0.0, 0.0), Truncation(64, 64, 24))
    mid_wide = heisenberg_check(assemble(wide, path, half), wide).worst
    assert report(
        3,
        ok,
        f"at T: Heisenberg {h:.1e} (tol 1e-7), K/M displacement {d:.1e} (tol 1e-8); "
        f"informational: at T/2 {mid:.1e} with buffer 12, {mid_wide:.1e} with buffer 24",
    )


def test_criterion_4_factor_order_and_unitarity(loop_run, report):
    _, b = loop_run
    order = factor_order_defect(b)
    unitary = max(unitarity_defect(op) for op in (b.d_factor, b.k_factor, b.m_factor, b.gauge_factor))
    ok = order <= 1e-8 and unitary <= 1e-10
    assert report(4, ok, f"||P(DKM - MDK)P|| = {order:.2e} (tol 1e-8); unitarity {unitary:.2e} (tol 1e-10)")


def test_criterion_5_geometric_phase(model, report):
    ccw, cw = Circle.through_origin(2.0), Circle.through_origin(2.0, -1.0)
    eps = (0.1, 0.05, 0.025)
    betas = [geometric_phase_closed_loop(ccw, model, e).beta_geometric for e in eps]
    beta_cw = geometric_phase_closed_loop(cw, model, 0.1).beta_geometric
    oracle = path_ordered_phase_heisenberg(ccw.rescaled(0.1), model.params, segments=10_000)
    flux_err = abs(betas[0] + np.pi)
    odd_err = abs(beta_cw + betas[0])
    spread = float(np.ptp(betas))
    oracle_err = abs(betas[0] - oracle)
    ok = flux_err <= 1e-6 and odd_err <= 1e-6 and spread <= 1e-8 and oracle_err <= 1e-6
    assert report(
        5,
        ok,
        f"beta = {betas[0]:.12f} (|beta + pi| {flux_err:.1e}); reversed {beta_cw:+.12f}; "
        f"epsilon spread {spread:.1e} (tol 1e-8); 1e4-segment oracle diff {oracle_err:.1e} (tol 1e-6)",
    )


def test_criterion_6_adiabatic_scaling(model, report):
    reps = transition_sweep(LOOP, model, 0, SWEEP_EPS)
    slope = reps[0].fitted_slope
    defects = [k_identity_defect(LOOP, model, e) for e in SWEEP_EPS]
    k_slope = fit_loglog(SWEEP_EPS, defects)
    ok = abs(slope - 2) <= 0.1 and abs(k_slope - 1) <= 0.1
    p = ", ".join(f"{r.total_out:.2e}" for r in reps)
    assert report(
        6,
        ok,
        f"P_out slope {slope:.3f} (2 +- 0.1) from [{p}]; K-defect slope {k_slope:.3f} (1 +- 0.1)",
    )


def test_criterion_7_level_dependence(model, report):
    rep = level_dependence(Circle.through_origin(0.1, RATE), model, (0, 1, 2, 5, 10), epsilon=0.05)
    small = abs(rep.alpha_tilde) <= 1e-2
    ok = small and rep.max_dev_linear <= 0.05
    ratios = ", ".join(f"n={n}: {r:.4f}/{2 * n + 1}" for n, r in zip(rep.levels, rep.ratio))
    assert report(
        7,
        ok,
        f"|alpha| = {abs(rep.alpha_tilde):.2e}; ratio vs 2n+1 [{ratios}], worst {rep.max_dev_linear:.1e} (tol 5%); "
        f"informational: best n^2 fit c = {rep.n2_coefficient:.3f} misses by up to {rep.max_dev_n2:.0%}",
    )


def test_criterion_8_drift(model, report):
    v = 0.2
    path = Line(velocity=(v, 0.0), duration=5 * 2 * np.pi)
    grid = np.linspace(0, path.t_final, 11)
    psi = basis_state(0, 0, TRUNC)
    track = wavepacket_center_track(path, model, psi, grid)
    lab = lab_frame_track(path, model, psi, grid, dt=1e-2)
    drift, drift_lab = drift_velocity(track), drift_velocity(lab)
    target = np.array([v / 2, 0.0])
    rel = float(np.linalg.norm(drift - target) / np.linalg.norm(target))
    rel_lab = float(np.linalg.norm(drift_lab - target) / np.linalg.norm(target))
    dev = max(np.hypot(a[1] - b[1], a[2] - b[2]) for a, b in zip(track, lab))
    ok = rel <= 0.02 and rel_lab <= 0.02
    assert report(
        8,
        ok,
        f"drift under U_L ({drift[0]:.7f}, {drift[1]:.1e}), H_L oracle ({drift_lab[0]:.7f}, {drift_lab[1]:.1e}); "
        f"relative error {rel:.1e} / {rel_lab:.1e} (tol 2%); track deviation {dev:.1e}",
    )


def test_criterion_9_gauge_consistency(model, loop_run, report):
    _, closed = loop_run
    closed_defect = closed_loop_gauge_defect(closed)
    # half a loop ends a diameter away from the start
    path = Circle.through_origin(1.0, RATE, turns=0.5).rescaled(0.1)
    b = assemble(model, path, path.t_final)
    construction = interior_distance(b.u_l, b.gauge_factor @ b.u)
    oracle = interior_distance(lab_frame_propagator(path, model, path.t_final, dt=1e-2), b.u_l)
    ok = closed_defect <= 1e-9 and construction <= 1e-12 and oracle <= 1e-5
    assert report(
        9,
        ok,
        f"closed loop ||P(U_L - U)P|| = {closed_defect:.1e} (tol 1e-9); open half loop: "
        f"U_L vs gauge U {construction:.1e}, vs H_L oracle {oracle:.1e} (tol 1e-5)",
    )
