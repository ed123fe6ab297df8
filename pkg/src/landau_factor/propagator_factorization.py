"""Closed-form factors of the propagator for the dragged-potential problem.

    U(t, 0)   = D(t) K(t) M(t) = M(t) D(t) K(t)
    U_L(t, 0) = exp[-i (q/hbar c) chi(x, t)] M(t) D(t) K(t)

``D`` is free cyclotron evolution, ``K`` a mode-A displacement driven by
``alpha(t) = int_0^t e^{i omega s} R'(s) ds`` and ``M`` a magnetic translation
(mode-B displacement) by ``d(t) = (R(t) - R(0))/2``.  The time / path
ordering of ``K`` and ``M`` only contributes c-number phases, because the
generators close on the identity:

    T exp(int A) = exp(i phi_K) exp(int A),   P exp(int B) = exp(i beta) exp(int B).

With ``f(s) = e^{i omega s} R'(s)`` and ``kappa = qB/c`` these are

    phi_K = -(kappa / 8 hbar) int_0^t Im[conj(f(s)) alpha(s)] ds
    beta  = -(kappa / 2 hbar) int_0^t (d1 d2' - d2 d1') ds

The nested ``phi_K`` integral is reduced to single quadratures panel by panel.
Brute-force ordered products live in :func:`ordered_product_k` and
:func:`path_ordered_phase_heisenberg` and are used only as oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import units
from .drive_path import DrivePath
from .fock_algebra import (
    OperatorMatrix,
    compose,
    exp_skew_hermitian,
    expm_skew,
    interior_distance,
)
from .landau_model import ModelOperators, PhysicalParams, gauge_phase_factor
from .quadrature import DEFAULT_RTOL, _quad_real, integrate_panel, panel_grid


@dataclass(frozen=True)
class PropagatorBundle:
    t: float
    d_factor: OperatorMatrix
    k_factor: OperatorMatrix
    m_factor: OperatorMatrix
    gauge_factor: OperatorMatrix
    u: OperatorMatrix
    u_l: OperatorMatrix
    alpha_tilde: complex
    beta_phase: float
    phi_k_phase: float
    #: R(t) - R(0)
    displacement: tuple = (0.0, 0.0)


def _panel_width(path: DrivePath, params: PhysicalParams) -> float:
    # a few panels per cyclotron period, and never fewer than 8 panels overall
    return min(np.pi / params.omega, path.t_final / 8)


def _kernel(path: DrivePath, params: PhysicalParams):
    omega = params.omega

    def f(s):
        v = path.derivative(s)
        return np.exp(1j * omega * s) * complex(v[0], v[1])

    return f


def _grid(path, params, t):
    return panel_grid(0.0, float(t), _panel_width(path, params), [p for p in path.breakpoints() if p < t])


def alpha_integral(path: DrivePath, params: PhysicalParams, t: float, rtol: float = DEFAULT_RTOL) -> complex:
    """``int_0^t exp(i omega s) (R1'(s) + i R2'(s)) ds`` (a length)."""
    path._check(t)
    if t == 0:
        return 0j
    f = _kernel(path, params)
    grid = _grid(path, params, t)
    return complex(sum(integrate_panel(f, lo, hi, rtol=rtol)[0] for lo, hi in zip(grid[:-1], grid[1:])))


def time_ordering_phase(path: DrivePath, params: PhysicalParams, t: float, rtol: float = DEFAULT_RTOL) -> float:
    """``phi_K``: phase separating the time-ordered K from the plain exponential.

    Iterated quadrature: on each panel the inner integral restarts from the
    running value of ``alpha`` at the panel's left edge.
    """
    path._check(t)
    if t == 0:
        return 0.0
    f = _kernel(path, params)
    grid = _grid(path, params, t)
    alpha_left = 0j
    total = 0.0
    for lo, hi in zip(grid[:-1], grid[1:]):
        start = alpha_left

        def outer(s, lo=lo, start=start):
            inner = integrate_panel(f, lo, s, rtol=rtol)[0] if s > lo else 0j
            return (np.conj(f(s)) * (start + inner)).imag

        fmax = max(abs(f(lo)), abs(f(hi)), 1e-300)
        scale = (abs(start) + (hi - lo) * fmax) * (hi - lo) * fmax
        val, _ = _quad_real(outer, lo, hi, rtol * scale, rtol, 200)
        total += val
        alpha_left += integrate_panel(f, lo, hi, rtol=rtol)[0]
    return -params.kappa / (8 * params.hbar) * total


def time_ordering_phase_2d(path: DrivePath, params: PhysicalParams, t: float, rtol: float = 1e-9) -> float:
    """Same phase by direct 2-D adaptive quadrature over ``0 < s' < s < t`` (slow; short ranges only)."""
    from scipy import integrate

    f = _kernel(path, params)
    val, _ = integrate.dblquad(
        lambda sp, s: (np.conj(f(s)) * f(sp)).imag, 0.0, t, 0.0, lambda s: s, epsabs=1e-13, epsrel=rtol
    )
    return -params.kappa / (8 * params.hbar) * val


def path_ordering_phase(path: DrivePath, params: PhysicalParams, t: float, rtol: float = DEFAULT_RTOL) -> float:
    """``beta``: phase separating the path-ordered M from the plain exponential."""
    path._check(t)
    if t == 0:
        return 0.0

    def integrand(s):
        d, dd = path.half_displacement(s)
        return d[0] * dd[1] - d[1] * dd[0]

    def magnitude(s):
        d, dd = path.half_displacement(s)
        return float(np.hypot(*d) * np.hypot(*dd))

    grid = panel_grid(0.0, float(t), float(t) / 16, [p for p in path.breakpoints() if p < t])
    total = sum(
        integrate_panel(integrand, lo, hi, rtol=rtol, magnitude=magnitude)[0].real
        for lo, hi in zip(grid[:-1], grid[1:])
    )
    return -params.kappa / (2 * params.hbar) * total


def dynamical_factor(model: ModelOperators, t: float) -> OperatorMatrix:
    """``exp(-i H_L(0) t / hbar)``, diagonal in the Fock basis."""
    if t < 0:
        raise ValueError("t must be non-negative")
    energies = np.real(np.diag(model.h0.mode_factor("A")))
    return OperatorMatrix.kron(np.diag(np.exp(-1j * energies * t / model.params.hbar)), None, model.trunc)


def k_generator(model: ModelOperators, alpha: complex) -> OperatorMatrix:
    """``(i / 4 hbar)(pi^dag alpha + pi alpha*)``."""
    hb = model.params.hbar
    u = units.LENGTH / units.ACTION
    return model.pi_dag.scaled(1j * alpha / (4 * hb), u) + model.pi.scaled(1j * np.conj(alpha) / (4 * hb), u)


def m_generator(model: ModelOperators, d) -> OperatorMatrix:
    """``-(i / hbar) eta_mu d_mu``."""
    hb = model.params.hbar
    u = units.LENGTH / units.ACTION
    return model.eta1.scaled(-1j * d[0] / hb, u) + model.eta2.scaled(-1j * d[1] / hb, u)


def nonadiabatic_factor(model: ModelOperators, path: DrivePath, t: float, rtol: float = DEFAULT_RTOL):
    """``K(t)`` and its time-ordering phase ``phi_K``."""
    alpha = alpha_integral(path, model.params, t, rtol)
    phi = time_ordering_phase(path, model.params, t, rtol)
    k = exp_skew_hermitian(k_generator(model, alpha)).scaled(np.exp(1j * phi))
    return k, phi


def magnetic_translation_factor(model: ModelOperators, path: DrivePath, t: float, rtol: float = DEFAULT_RTOL):
    """``M(t)`` and its path-ordering phase ``beta``."""
    d, _ = path.half_displacement(t)
    beta = path_ordering_phase(path, model.params, t, rtol)
    m = exp_skew_hermitian(m_generator(model, d)).scaled(np.exp(1j * beta))
    return m, beta


def assemble(model: ModelOperators, path: DrivePath, t: float, rtol: float = DEFAULT_RTOL) -> PropagatorBundle:
    """All factors at time ``t`` plus ``U = D K M`` and ``U_L = gauge M D K``."""
    t = float(t)
    path._check(t)
    alpha = alpha_integral(path, model.params, t, rtol)
    d_f = dynamical_factor(model, t)
    k_f, phi = nonadiabatic_factor(model, path, t, rtol)
    m_f, beta = magnetic_translation_factor(model, path, t, rtol)
    g_f = gauge_phase_factor(model, path, t)
    u = compose([d_f, k_f, m_f])
    u_l = compose([g_f, m_f, d_f, k_f])
    return PropagatorBundle(
        t=t,
        d_factor=d_f,
        k_factor=k_f,
        m_factor=m_f,
        gauge_factor=g_f,
        u=u,
        u_l=u_l,
        alpha_tilde=alpha,
        beta_phase=beta,
        phi_k_phase=phi,
        displacement=tuple(float(x) for x in path.evaluate(t) - path.evaluate(0.0)),
    )


# -- brute-force oracles -----------------------------------------------------


def _midpoint_product(gen_at, ts):
    """Ordered product of ``exp(gen_at(s_mid) * ds)`` over the grid ``ts`` (later times on the left)."""
    out = None
    for lo, hi in zip(ts[:-1], ts[1:]):
        step = expm_skew(gen_at(0.5 * (lo + hi)) * (hi - lo))
        out = step if out is None else step @ out
    return out


def ordered_product_k(model: ModelOperators, path: DrivePath, t: float, steps: int = 1000, richardson: bool = True):
    """Time-ordered K as a fine product of single-step exponentials on mode A.

    Returns the mode-A matrix (Richardson-extrapolated from ``steps`` and
    ``2*steps`` midpoint products when ``richardson`` is set) as an operator
    on the full space.
    """
    omega, hb = model.params.omega, model.params.hbar
    a_pi = model.pi.mode_factor("A")
    a_pid = a_pi.conj().T

    def gen(s):
        v = path.derivative(s)
        f = np.exp(1j * omega * s) * complex(v[0], v[1])
        return (1j / (4 * hb)) * (a_pid * f + a_pi * np.conj(f))

    coarse = _midpoint_product(gen, np.linspace(0.0, t, steps + 1))
    if richardson:
        fine = _midpoint_product(gen, np.linspace(0.0, t, 2 * steps + 1))
        coarse = (4 * fine - coarse) / 3
    return OperatorMatrix.kron(coarse, None, model.trunc)


def path_ordered_phase_heisenberg(path: DrivePath, params: PhysicalParams, t: float | None = None, segments: int = 10_000):
    """``beta`` from a polyline path-ordered product in the 3x3 Heisenberg representation.

    ``eta1 -> E12``, ``eta2 -> E23`` and the central element ``[eta1, eta2] ->
    E13`` give a faithful representation of the algebra generated by the
    guiding-centre operators, so the ordered product of segment exponentials
    is exact group multiplication; the only approximation is replacing the
    curve by a ``segments``-gon.
    """
    t = path.t_final if t is None else t
    hb, kappa = params.hbar, params.kappa
    ts = np.linspace(0.0, t, segments + 1)
    d = 0.5 * (path.evaluate(ts) - path.evaluate(0.0))
    prod = np.eye(3, dtype=complex)
    for dd in np.diff(d, axis=0):
        n = np.zeros((3, 3), complex)
        n[0, 1] = -1j * dd[0] / hb
        n[1, 2] = -1j * dd[1] / hb
        prod = (np.eye(3) + n + 0.5 * n @ n) @ prod
    x, y = prod[0, 1], prod[1, 2]
    central = prod[0, 2] - 0.5 * x * y
    # central * [eta1, eta2] = central * (-i hbar kappa) = i beta
    return float((central * (-1j * hb * kappa) / 1j).real)


def factor_order_defect(bundle: PropagatorBundle) -> float:
    """``||P(D K M - M D K)P||``; the two orderings agree because M commutes with D and K."""
    return interior_distance(
        compose([bundle.d_factor, bundle.k_factor, bundle.m_factor]),
        compose([bundle.m_factor, bundle.d_factor, bundle.k_factor]),
    )
