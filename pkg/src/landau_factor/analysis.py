"""Physics studies built on the factorised propagator.

Everything here consumes :class:`~landau_factor.propagator_factorization.PropagatorBundle`
objects; the reference integrator is only used for the lab-frame oracle in
:func:`lab_frame_track`.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .drive_path import DrivePath, signed_area_d_path
from .errors import ContractError
from .fock_algebra import (
    OperatorMatrix,
    StateVector,
    apply,
    basis_state,
    expectation,
    interior_distance,
    restrict,
    restrict_state,
)
from .landau_model import ModelOperators, hamiltonian_builder
from .propagator_factorization import PropagatorBundle, assemble
from .reference_integrator import IntegratorConfig, propagate_reference


@dataclass(frozen=True)
class HeisenbergResiduals:
    pi: float
    eta1: float
    eta2: float

    @property
    def worst(self) -> float:
        return max(self.pi, self.eta1, self.eta2)


@dataclass(frozen=True)
class PhaseReport:
    beta_geometric: float
    beta_flux: float
    phi_k: float
    dynamical_phase: np.ndarray
    loop_area_d: float
    epsilon: float
    t_final: float
    #: ``||P(M - e^{i beta})P||``, how far the loop's M is from the pure phase
    m_residual: float


@dataclass(frozen=True)
class TransitionReport:
    n_initial: int
    probabilities: dict
    epsilon: float
    total_out: float
    leakage: float
    alpha_tilde: complex
    fitted_slope: float = float("nan")

    @property
    def survival(self) -> float:
        return self.probabilities.get(self.n_initial, 0.0)

    @property
    def most_probable(self) -> int:
        return max(self.probabilities, key=self.probabilities.get)

    @property
    def bookkeeping_defect(self) -> float:
        """``|survival + transitions + leakage - 1|``."""
        return abs(sum(self.probabilities.values()) + self.leakage - 1.0)


@dataclass(frozen=True)
class LevelReport:
    levels: tuple
    p_out: tuple
    ratio: tuple
    alpha_tilde: complex
    #: first-order prediction ``(2n+1) |z|^2`` per level
    first_order: tuple
    max_dev_linear: float
    #: least-squares ``c`` in ``ratio ~ c n^2`` over ``n >= 1``, and its worst relative misfit
    n2_coefficient: float
    max_dev_n2: float
    meta: dict = field(default_factory=dict)


# -- Heisenberg picture ------------------------------------------------------


def heisenberg_check(bundle: PropagatorBundle, model: ModelOperators) -> HeisenbergResiduals:
    """Interior residuals of ``U^dag pi U`` and ``U^dag eta U`` against the closed-form solutions.

        U^dag pi U    = e^{-i omega t} (pi + i (qB/2c) alpha)
        U^dag eta1 U  = eta1 - (qB/2c) (R2(t) - R2(0))
        U^dag eta2 U  = eta2 + (qB/2c) (R1(t) - R1(0))
    """
    p = model.params
    u, ud = bundle.u, bundle.u.adjoint()
    ident = OperatorMatrix.identity(model.trunc)
    rot = np.exp(-1j * p.omega * bundle.t)
    pi_expected = model.pi.scaled(rot) + ident.scaled(0.5j * p.kappa * rot * bundle.alpha_tilde, model.pi.unit)
    dr = bundle.displacement
    eta1_expected = model.eta1 - ident.scaled(0.5 * p.kappa * dr[1], model.eta1.unit)
    eta2_expected = model.eta2 + ident.scaled(0.5 * p.kappa * dr[0], model.eta2.unit)
    return HeisenbergResiduals(
        interior_distance(ud @ model.pi @ u, pi_expected),
        interior_distance(ud @ model.eta1 @ u, eta1_expected),
        interior_distance(ud @ model.eta2 @ u, eta2_expected),
    )


def displacement_check(bundle: PropagatorBundle, model: ModelOperators) -> HeisenbergResiduals:
    """Residuals of the single-factor displacement rules

        K^dag pi K = pi + i (qB/2c) alpha,   M^dag eta M = eta + (qB/2c) e3 x (R(t) - R(0)).
    """
    p = model.params
    ident = OperatorMatrix.identity(model.trunc)
    k, m = bundle.k_factor, bundle.m_factor
    dr = bundle.displacement
    pi_expected = model.pi + ident.scaled(0.5j * p.kappa * bundle.alpha_tilde, model.pi.unit)
    return HeisenbergResiduals(
        interior_distance(k.adjoint() @ model.pi @ k, pi_expected),
        interior_distance(m.adjoint() @ model.eta1 @ m, model.eta1 - ident.scaled(0.5 * p.kappa * dr[1], model.eta1.unit)),
        interior_distance(m.adjoint() @ model.eta2 @ m, model.eta2 + ident.scaled(0.5 * p.kappa * dr[0], model.eta2.unit)),
    )


# -- geometric phase ---------------------------------------------------------


def _require_closed(path: DrivePath):
    if not path.is_closed:
        raise ContractError(f"{path.kind} path is not closed")


def geometric_phase_closed_loop(path: DrivePath, model: ModelOperators, epsilon: float | None = None) -> PhaseReport:
    """Phase bookkeeping for one traversal of a closed loop.

    ``beta`` is the path-ordering phase carried by ``M``; for a closed loop
    ``M`` collapses to ``e^{i beta}`` and ``beta = -(qB/hbar c) * area(d)``.
    ``dynamical_phase[n] = -E_n T / hbar`` for each interior level.
    """
    if epsilon is not None:
        path = path.rescaled(epsilon)
    _require_closed(path)
    p = model.params
    area = signed_area_d_path(path)
    bundle = assemble(model, path, path.t_final)
    beta = bundle.beta_phase
    m_res = interior_distance(bundle.m_factor, OperatorMatrix.identity(model.trunc).scaled(np.exp(1j * beta)))
    energies = np.real(np.diag(model.h0.mode_factor("A")))[: model.trunc.interior_a]
    return PhaseReport(
        beta_geometric=beta,
        beta_flux=-p.kappa / p.hbar * area,
        phi_k=bundle.phi_k_phase,
        dynamical_phase=-energies * path.t_final / p.hbar,
        loop_area_d=area,
        epsilon=path.epsilon,
        t_final=path.t_final,
        m_residual=m_res,
    )


# -- transitions -------------------------------------------------------------


def _check_level(model: ModelOperators, n: int):
    if not (0 <= int(n) < model.trunc.interior_a):
        raise ContractError(f"initial level {n} outside the interior [0, {model.trunc.interior_a})")


def transition_probabilities(
    u: OperatorMatrix, n_initial: int, m_initial: int = 0
) -> tuple[dict, float, float]:
    """Final-level distribution of ``u |n_initial, m_initial>``.

    Returns ``(probabilities, total_out, leakage)``: probabilities are summed
    over the guiding-centre level inside the interior, leakage is the weight
    outside it, and ``total_out`` is the off-diagonal sum plus leakage (no
    ``1 - survival`` cancellation).
    """
    t = u.trunc
    grid = apply(u, basis_state(n_initial, m_initial, t)).as_grid()
    w = np.abs(grid) ** 2
    inner = w[: t.interior_a, : t.interior_b].sum(axis=1)
    leakage = float(w.sum() - inner.sum())
    probs = {int(n): float(v) for n, v in enumerate(inner)}
    out = float(sum(v for n, v in probs.items() if n != n_initial)) + leakage
    return probs, out, leakage


def _sweep_item(args):
    path, model, n_initial, eps = args
    bundle = assemble(model, path.rescaled(eps), path.rescaled(eps).t_final)
    probs, out, leak = transition_probabilities(bundle.u, n_initial)
    return eps, probs, out, leak, bundle.alpha_tilde


def fit_loglog(x, y) -> float:
    """Slope of ``log y`` against ``log x`` by least squares."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    if x.size < 2 or np.any(x <= 0) or np.any(y <= 0):
        return float("nan")
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def transition_sweep(
    path: DrivePath, model: ModelOperators, n_initial: int, epsilons, workers: int = 1
) -> list[TransitionReport]:
    """Evolve ``|n_initial, 0>`` through the full drive for each epsilon.

    Reports are sorted by epsilon and all carry the log-log slope of
    ``total_out`` against epsilon.
    """
    _check_level(model, n_initial)
    _require_closed(path)
    items = [(path, model, int(n_initial), float(e)) for e in sorted(set(float(e) for e in epsilons))]
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_item, items))
    else:
        rows = [_sweep_item(it) for it in items]
    rows.sort(key=lambda r: r[0])
    slope = fit_loglog([r[0] for r in rows], [r[2] for r in rows])
    return [
        TransitionReport(int(n_initial), probs, eps, out, leak, alpha, slope)
        for eps, probs, out, leak, alpha in rows
    ]


def k_identity_defect(path: DrivePath, model: ModelOperators, epsilon: float) -> float:
    """``||P(K - e^{i phi_K})P||`` at the end of the rescaled drive."""
    path = path.rescaled(epsilon)
    bundle = assemble(model, path, path.t_final)
    ident = OperatorMatrix.identity(model.trunc).scaled(np.exp(1j * bundle.phi_k_phase))
    return interior_distance(bundle.k_factor, ident)


def level_dependence(path: DrivePath, model: ModelOperators, levels, epsilon: float | None = None) -> LevelReport:
    """``P_out(n) / P_out(0)`` at one drive, compared with ``2n+1`` and ``n^2``."""
    levels = tuple(sorted(set(int(n) for n in levels) | {0}))
    for n in levels:
        _check_level(model, n)
    if epsilon is not None:
        path = path.rescaled(epsilon)
    bundle = assemble(model, path, path.t_final)
    p_out = []
    for n in levels:
        _, out, _ = transition_probabilities(bundle.u, n)
        p_out.append(out)
    ratio = np.asarray(p_out) / p_out[0]
    lv = np.asarray(levels, float)
    lin = 2 * lv + 1
    z2 = model.params.kappa * abs(bundle.alpha_tilde) ** 2 / (8 * model.params.hbar)
    pos = lv > 0
    if pos.any():
        n2 = lv[pos] ** 2
        c = float(np.dot(n2, ratio[pos]) / np.dot(n2, n2))
        dev_n2 = float(np.max(np.abs(ratio[pos] / (c * n2) - 1)))
    else:
        c, dev_n2 = float("nan"), float("nan")
    return LevelReport(
        levels=levels,
        p_out=tuple(float(v) for v in p_out),
        ratio=tuple(float(v) for v in ratio),
        alpha_tilde=bundle.alpha_tilde,
        first_order=tuple(float(v) for v in lin * z2),
        max_dev_linear=float(np.max(np.abs(ratio / lin - 1))),
        n2_coefficient=c,
        max_dev_n2=dev_n2,
        meta={"epsilon": path.epsilon, "t_final": path.t_final},
    )


# -- wavepacket centre -------------------------------------------------------


def _center(model: ModelOperators, psi: StateVector):
    return (
        expectation(model.x1, psi).real + model.r0[0],
        expectation(model.x2, psi).real + model.r0[1],
    )


def _check_initial(psi: StateVector, tol: float = 1e-8):
    if abs(psi.norm - 1) > tol:
        raise ContractError(f"initial state has norm {psi.norm}")
    if abs(psi.interior_weight() - 1) > tol:
        raise ContractError("initial state has weight outside the interior")


def wavepacket_center_track(path: DrivePath, model: ModelOperators, initial: StateVector, t_grid) -> list:
    """``(t, <x1>, <x2>)`` under ``U_L(t)``; positions are absolute (``model.r0`` is the gauge centre)."""
    _check_initial(initial)
    out = []
    for t in np.asarray(t_grid, float):
        psi = apply(assemble(model, path, float(t)).u_l, initial)
        out.append((float(t), *_center(model, psi)))
    return out


def lab_frame_track(
    path: DrivePath, model: ModelOperators, initial: StateVector, t_grid, dt: float = 1e-3, pad: int = 8
) -> list:
    """Same trajectory from direct integration of the lab-frame Hamiltonian (oracle).

    Integration runs on a truncation padded by ``pad`` levels per mode and
    each state is cut back before taking expectations.
    """
    _check_initial(initial)
    big = model.with_trunc(model.trunc.padded(pad))
    psi_big = np.zeros((big.trunc.na, big.trunc.nb), complex)
    psi_big[: model.trunc.na, : model.trunc.nb] = initial.as_grid()
    psi = StateVector(psi_big.ravel(), big.trunc)
    h_lab = hamiltonian_builder(big, path, frame="lab")
    out, t_prev = [], 0.0
    for t in np.asarray(t_grid, float):
        if t > t_prev:
            t0 = t_prev
            kinks = tuple(b - t0 for b in path.breakpoints())
            cfg = IntegratorConfig(dt=min(dt, t - t0), t_final=t - t0, breakpoints=kinks)
            step = propagate_reference(lambda s, t0=t0: h_lab(t0 + s), cfg, hbar=model.params.hbar).u_ref
            psi = apply(step, psi)
            t_prev = t
        out.append((float(t), *_center(model, restrict_state(psi, model.trunc))))
    return out


def lab_frame_propagator(path: DrivePath, model: ModelOperators, t: float, dt: float = 1e-3, pad: int = 8):
    """``U_L(t)`` by integrating the lab-frame Hamiltonian on a padded truncation."""
    big = model.with_trunc(model.trunc.padded(pad))
    cfg = IntegratorConfig(dt=min(dt, t), t_final=t, breakpoints=path.breakpoints())
    u = propagate_reference(hamiltonian_builder(big, path, frame="lab"), cfg, hbar=model.params.hbar).u_ref
    return restrict(u, model.trunc)


def drift_velocity(track) -> np.ndarray:
    """Mean centre velocity ``(x(T) - x(0)) / T`` over a track spanning whole cyclotron periods."""
    t0, x0, y0 = track[0]
    t1, x1, y1 = track[-1]
    return np.array([(x1 - x0) / (t1 - t0), (y1 - y0) / (t1 - t0)])


def closed_loop_gauge_defect(bundle: PropagatorBundle) -> float:
    """``||P(U_L - U)P||``; vanishes when the drive returns to its start."""
    return interior_distance(bundle.u_l, bundle.u)


__all__ = [
    "HeisenbergResiduals",
    "PhaseReport",
    "TransitionReport",
    "LevelReport",
    "heisenberg_check",
    "displacement_check",
    "geometric_phase_closed_loop",
    "transition_probabilities",
    "transition_sweep",
    "fit_loglog",
    "k_identity_defect",
    "level_dependence",
    "wavepacket_center_track",
    "lab_frame_track",
    "lab_frame_propagator",
    "drift_velocity",
    "closed_loop_gauge_defect",
]
