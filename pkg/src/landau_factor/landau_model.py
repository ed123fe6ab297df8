"""Landau-level operator content on the truncated two-mode space.

Mode A is the cyclotron oscillator, ``pi = pi1 + i pi2 = sqrt(2 hbar qB/c) a``.
Mode B is the guiding-centre oscillator, ``eta1 - i eta2 = sqrt(2 hbar qB/c) b``.
Positions are measured from the gauge centre R(0):

    x1 = (eta2 - pi2) / (qB/c),   x2 = (pi1 - eta1) / (qB/c).

Every operator here is a sum of single-mode pieces, so they are all stored in
factored form (see :mod:`landau_factor.fock_algebra`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import units
from .drive_path import DrivePath
from .errors import ConfigurationError
from .fock_algebra import (
    OperatorMatrix,
    Truncation,
    exp_skew_hermitian,
    is_hermitian,
    lowering_matrix,
    number_matrix,
)


@dataclass(frozen=True)
class PhysicalParams:
    """Charge, field, mass, light speed and hbar (natural units by default).

    Only ``qB > 0`` is supported; the opposite sign would swap which
    combination of ``pi1, pi2`` lowers the energy.
    """

    q: float = 1.0
    B: float = 1.0
    m: float = 1.0
    c: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("q", "B", "m", "c", "hbar"):
            v = getattr(self, name)
            if not isinstance(v, (int, float, np.floating, np.integer)) or not np.isfinite(v):
                raise ConfigurationError(f"{name} must be a finite number, got {v!r}")
        if self.q * self.B <= 0:
            raise ConfigurationError("only qB > 0 is supported")
        if self.m <= 0 or self.c <= 0 or self.hbar <= 0:
            raise ConfigurationError("m, c and hbar must be positive")

    @classmethod
    def natural(cls) -> "PhysicalParams":
        return cls()

    @property
    def omega(self) -> float:
        """Cyclotron frequency qB/(mc)."""
        return self.q * self.B / (self.m * self.c)

    @property
    def kappa(self) -> float:
        """qB/c, momentum per length."""
        return self.q * self.B / self.c

    @property
    def ell(self) -> float:
        """Magnetic length sqrt(hbar c/(qB))."""
        return float(np.sqrt(self.hbar / self.kappa))

    def as_dict(self) -> dict:
        return {"q": self.q, "B": self.B, "m": self.m, "c": self.c, "hbar": self.hbar}


class ModelOperators:
    """pi, eta, positions and the static Hamiltonian for one truncation."""

    def __init__(self, params: PhysicalParams, r0, trunc: Truncation):
        self.params = params
        self.r0 = np.asarray(r0, float).reshape(2)
        self.trunc = trunc
        scale = np.sqrt(2 * params.hbar * params.kappa)
        a = lowering_matrix(trunc.na)
        b = lowering_matrix(trunc.nb)
        ad, bd = a.conj().T, b.conj().T
        mom = units.MOMENTUM
        self._pi1 = 0.5 * scale * (a + ad)
        self._pi2 = -0.5j * scale * (a - ad)
        self._eta1 = 0.5 * scale * (b + bd)
        self._eta2 = 0.5j * scale * (b - bd)
        self.pi1 = OperatorMatrix.mode_sum(self._pi1, None, trunc, mom)
        self.pi2 = OperatorMatrix.mode_sum(self._pi2, None, trunc, mom)
        self.eta1 = OperatorMatrix.mode_sum(None, self._eta1, trunc, mom)
        self.eta2 = OperatorMatrix.mode_sum(None, self._eta2, trunc, mom)
        #: complex pi = pi1 + i pi2, proportional to the mode-A lowering operator
        self.pi = OperatorMatrix.mode_sum(scale * a, None, trunc, mom)
        k = params.kappa
        self.x1 = OperatorMatrix.mode_sum(-self._pi2 / k, self._eta2 / k, trunc, units.LENGTH)
        self.x2 = OperatorMatrix.mode_sum(self._pi1 / k, -self._eta1 / k, trunc, units.LENGTH)
        e = params.hbar * params.omega * (number_matrix(trunc.na) + 0.5 * np.eye(trunc.na))
        self.h0 = OperatorMatrix.mode_sum(e, None, trunc, units.ENERGY)

    @property
    def pi_dag(self) -> OperatorMatrix:
        return self.pi.adjoint()

    @cached_property
    def h0_from_momenta(self) -> OperatorMatrix:
        """``(pi1^2 + pi2^2)/(2m)`` from the truncated momenta (differs from ``h0`` at the edge)."""
        return (self.pi1 @ self.pi1 + self.pi2 @ self.pi2).scaled(0.5 / self.params.m, units.MASS ** -1)

    def with_trunc(self, trunc: Truncation) -> "ModelOperators":
        return ModelOperators(self.params, self.r0, trunc)

    def __repr__(self):
        return f"ModelOperators(params={self.params}, r0={self.r0.tolist()}, trunc={self.trunc})"


def build_model(params: PhysicalParams, r0, trunc: Truncation) -> ModelOperators:
    if not isinstance(params, PhysicalParams):
        raise ConfigurationError("params must be PhysicalParams")
    if not isinstance(trunc, Truncation):
        raise ConfigurationError("trunc must be a Truncation")
    return ModelOperators(params, r0, trunc)


def _displacement(path: DrivePath, t):
    return path.evaluate(t) - path.evaluate(0.0)


def build_h_at(model: ModelOperators, path: DrivePath, t: float) -> OperatorMatrix:
    """Gauge-transformed Hamiltonian ``h0 + (qB/2c)(x1 R2' - x2 R1')``."""
    v = path.derivative(t)
    half_k = 0.5 * model.params.kappa
    cu = units.FIELD_COUPLING * units.VELOCITY
    coupling = model.x1.scaled(half_k * v[1], cu) - model.x2.scaled(half_k * v[0], cu)
    h = model.h0 + coupling
    if not is_hermitian(h):
        raise ConfigurationError("H(t) came out non-Hermitian")
    return h


def build_h_lab_at(model: ModelOperators, path: DrivePath, t: float) -> OperatorMatrix:
    """Hamiltonian with the translated potential, ``[p - (q/c) A_L(x, R(t))]^2 / 2m``.

    With positions measured from R(0) the kinetic momentum is shifted by
    ``(qB/2c) e3 x (R(t) - R(0))``; the square is taken with the truncated
    momentum matrices, independently of ``h0``.
    """
    dr = _displacement(path, t)
    half_k = 0.5 * model.params.kappa
    ident = OperatorMatrix.identity(model.trunc)
    p1 = model.pi1 - ident.scaled(half_k * dr[1], units.MOMENTUM)
    p2 = model.pi2 + ident.scaled(half_k * dr[0], units.MOMENTUM)
    return (p1 @ p1 + p2 @ p2).scaled(0.5 / model.params.m, units.MASS ** -1)


def gauge_phase_factor(model: ModelOperators, path: DrivePath, t: float) -> OperatorMatrix:
    """``exp[-i (q / hbar c) chi(x, t)]`` with
    ``chi = -(B/2)(R2(t) - R2(0)) x1 + (B/2)(R1(t) - R1(0)) x2``."""
    dr = _displacement(path, t)
    p = model.params
    chi_over_b = model.x2.scaled(0.5 * dr[0], units.LENGTH) - model.x1.scaled(0.5 * dr[1], units.LENGTH)
    # -i q/(hbar c) * B * (chi/B)
    gen = chi_over_b.scaled(-1j * p.kappa / p.hbar, units.FIELD_COUPLING / units.ACTION)
    return exp_skew_hermitian(gen)


def hamiltonian_builder(model: ModelOperators, path: DrivePath, frame: str = "transformed"):
    """Fast ``t -> H(t)`` closure for the reference integrator.

    ``frame="transformed"`` gives :func:`build_h_at`, ``frame="lab"`` gives
    :func:`build_h_lab_at`; the single-mode pieces are precomputed so each
    call is a couple of small array combinations.
    """
    p = model.params
    half_k = 0.5 * p.kappa
    trunc = model.trunc
    if frame == "transformed":
        h0 = model.h0.mode_factor("A")
        x1a, x1b = model.x1.mode_factor("A"), model.x1.mode_factor("B")
        x2a, x2b = model.x2.mode_factor("A"), model.x2.mode_factor("B")

        def build(t):
            v = path.derivative(t)
            ha = h0 + half_k * (v[1] * x1a - v[0] * x2a)
            hb = half_k * (v[1] * x1b - v[0] * x2b)
            return OperatorMatrix.mode_sum(ha, hb, trunc, units.ENERGY)

        return build
    if frame == "lab":
        pi1, pi2 = model._pi1, model._pi2
        eye = np.eye(trunc.na)
        r0 = path.evaluate(0.0)

        def build_lab(t):
            dr = path.evaluate(t) - r0
            p1 = pi1 - half_k * dr[1] * eye
            p2 = pi2 + half_k * dr[0] * eye
            return OperatorMatrix.mode_sum((p1 @ p1 + p2 @ p2) / (2 * p.m), None, trunc, units.ENERGY)

        return build_lab
    raise ConfigurationError(f"unknown frame {frame!r}")
