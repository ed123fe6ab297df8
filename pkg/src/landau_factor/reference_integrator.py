"""Brute-force propagator for ``i hbar dU/dt = H(t) U`` on the truncated space.

Two commutator-free exponential schemes:

* order 2: exponential midpoint, ``exp(-i dt H(t + dt/2) / hbar)``;
* order 4: two exponentials per step built from the Gauss-Legendre nodes
  ``t + (1/2 -+ sqrt(3)/6) dt`` with weights ``(3 -+ 2 sqrt(3))/12``.

When ``H(t)`` is a sum of single-mode pieces (``H_A (x) 1 + 1 (x) H_B``),
each mode is propagated on its own and the result is ``U_A (x) U_B``; this is
exact, not an approximation.  Step exponentials of banded generators (every
Hamiltonian in this package is tridiagonal per mode) are applied with a
compiled Taylor kernel; anything else goes through an eigendecomposition.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numba
import numpy as np

from .errors import ConfigurationError, NumericalContractError
from .fock_algebra import (
    TOL_HERM,
    OperatorMatrix,
    _check_hermitian,
    expm_hermitian,
    interior_distance,
)

_SQRT3 = math.sqrt(3.0)
CF4_NODES = (0.5 - _SQRT3 / 6, 0.5 + _SQRT3 / 6)
CF4_WEIGHTS = ((3 - 2 * _SQRT3) / 12, (3 + 2 * _SQRT3) / 12)

_CHUNK = 512
_MAX_BAND = 6


class AccuracyWarning(UserWarning):
    """The Richardson error estimate exceeds the requested tolerance."""


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float
    t_final: float
    order: int = 4
    richardson: bool = False
    tolerance: float | None = None
    breakpoints: tuple[float, ...] = ()

    def __post_init__(self):
        if self.order not in (2, 4):
            raise ConfigurationError(f"order must be 2 or 4, got {self.order}")
        if not self.t_final > 0:
            raise ConfigurationError("t_final must be positive")
        if not (0 < self.dt <= self.t_final):
            raise ConfigurationError(f"need 0 < dt <= t_final, got dt={self.dt}, t_final={self.t_final}")

    @property
    def n_steps(self) -> int:
        return len(self.step_grid()[0])

    def step_grid(self, dt: float | None = None) -> tuple[np.ndarray, np.ndarray]:
        """``(starts, lengths)`` of the steps: uniform within each segment between breakpoints.

        Steps never straddle a breakpoint, where ``H(t)`` may have a kink that
        would cost the scheme its order.
        """
        dt = self.dt if dt is None else dt
        edges = sorted({0.0, float(self.t_final), *(float(b) for b in self.breakpoints if 0 < b < self.t_final)})
        starts, lengths = [], []
        for a, b in zip(edges[:-1], edges[1:]):
            n = max(1, math.ceil((b - a) / dt - 1e-9))
            h = (b - a) / n
            starts.append(a + h * np.arange(n))
            lengths.append(np.full(n, h))
        return np.concatenate(starts), np.concatenate(lengths)


class ReferenceResult(NamedTuple):
    u_ref: OperatorMatrix
    error_estimate: float | None


@numba.njit(cache=True, fastmath=True)
def _banded_exp_chain(u, bands, w, tau):
    """Left-multiply ``u`` by ``exp(-i tau H_k)`` for each banded ``H_k`` in order.

    ``bands[k, w + o, i] = H_k[i, i + o]``.  Each exponential is a Taylor
    series, sub-stepped so that ``tau * ||H||_inf <= 1/2`` and truncated once
    the bound ``(h ||H||)^j / j!`` on the remaining terms drops below 1e-18.
    """
    n = u.shape[0]
    ncols = u.shape[1]
    nb = bands.shape[1]
    for k in range(bands.shape[0]):
        hnorm = 0.0
        for i in range(n):
            row = 0.0
            for o in range(nb):
                row += abs(bands[k, o, i])
            if row > hnorm:
                hnorm = row
        sub = max(1, int(math.ceil(2.0 * tau * hnorm)))
        h = tau / sub
        x = h * hnorm
        n_terms = 1
        bound = x
        while bound > 1e-18 and n_terms < 60:
            n_terms += 1
            bound *= x / n_terms
        for _ in range(sub):
            acc = u.copy()
            term = u
            for j in range(1, n_terms + 1):
                new = np.zeros((n, ncols), dtype=u.dtype)
                fac = -1j * h / j
                for i in range(n):
                    for o in range(nb):
                        col = i + o - w
                        if col < 0 or col >= n:
                            continue
                        c = bands[k, o, i] * fac
                        if c == 0:
                            continue
                        for m in range(ncols):
                            new[i, m] += c * term[col, m]
                for i in range(n):
                    for m in range(ncols):
                        acc[i, m] += new[i, m]
                term = new
            u = acc
    return u


def _to_bands(stack, w):
    n = stack.shape[-1]
    bands = np.zeros((stack.shape[0], 2 * w + 1, n), complex)
    for o in range(-w, w + 1):
        diag = np.diagonal(stack, offset=o, axis1=1, axis2=2)
        if o >= 0:
            bands[:, w + o, : n - o] = diag
        else:
            bands[:, w + o, -o:] = diag
    return bands


def _bandwidth(stack):
    nz = np.abs(stack).max(axis=0) > 0
    i, j = np.nonzero(nz)
    return int(np.abs(i - j).max()) if i.size else 0


def _band_adjoint(bands, w):
    """Bands of ``H^dag`` from bands of ``H``."""
    n = bands.shape[-1]
    out = np.zeros_like(bands)
    for o in range(-w, w + 1):
        # H^dag[i, i+o] = conj(H[i+o, i]) = conj(bands[w-o, i+o])
        if o >= 0:
            out[:, w + o, : n - o] = bands[:, w - o, o:].conj()
        else:
            out[:, w + o, -o:] = bands[:, w - o, : n + o].conj()
    return out


def _hermitian_bands(stack, w, tol_herm):
    """Banded storage of a Hermitian stack; ``None`` if ``stack`` has entries outside the band."""
    bands = _to_bands(stack, w)
    full = np.vdot(stack, stack).real
    if not np.isclose(full, np.vdot(bands, bands).real, rtol=1e-13, atol=0.0):
        return None
    adj = _band_adjoint(bands, w)
    scale = max(1.0, float(np.abs(bands).max()))
    if np.abs(bands - adj).max() > tol_herm * scale:
        raise NumericalContractError("H(t) is not Hermitian")
    return 0.5 * (bands + adj)


def _apply_steps(u, stack, tau, tol_herm, w=None, weights=None, scales=None):
    """``u <- E_last ... E_1 E_0 u`` with ``E_k = exp(-i tau G_k)``.

    ``G_k = stack[k]``, or with ``weights`` of shape ``(e, n)`` the stack is
    read as ``(steps, n)`` node Hamiltonians and ``G = sum_n weights[e, n] H_n``
    gives ``e`` exponentials per step.  ``scales`` (one per step) multiplies
    each step's generators, for steps of unequal length.
    """
    if w is None:
        w = _bandwidth(stack)
    bands = _hermitian_bands(stack, w, tol_herm) if w <= _MAX_BAND else None
    if bands is not None:
        if weights is not None:
            nodes = weights.shape[1]
            bands = bands.reshape(-1, nodes, *bands.shape[1:])
            bands = np.einsum("en,snij->seij", weights, bands)
            if scales is not None:
                bands = bands * scales[:, None, None, None]
            bands = bands.reshape(-1, *bands.shape[2:])
        elif scales is not None:
            bands = bands * scales[:, None, None]
        return _banded_exp_chain(np.ascontiguousarray(u), np.ascontiguousarray(bands), w, float(tau))
    _check_hermitian(stack, tol_herm, "H(t)")
    stack = 0.5 * (stack + stack.conj().swapaxes(-1, -2))
    if weights is not None:
        nodes = weights.shape[1]
        stack = stack.reshape(-1, nodes, *stack.shape[1:])
        stack = np.einsum("en,snij->seij", weights, stack)
        if scales is not None:
            stack = stack * scales[:, None, None, None]
        stack = stack.reshape(-1, *stack.shape[2:])
    elif scales is not None:
        stack = stack * scales[:, None, None]
    for e in expm_hermitian(stack, tau):
        u = e @ u
    return u


def _weights(order):
    if order == 2:
        return [0.5], [[1.0]]
    w1, w2 = CF4_WEIGHTS
    # first exponential applied is weighted towards the earlier node
    return list(CF4_NODES), [[w2, w1], [w1, w2]]


def _run(h_builder, grid, order, hbar, tol_herm):
    all_starts, all_lengths = grid
    n_steps = all_starts.size
    dt = float(all_lengths.max())
    nodes, weights = _weights(order)
    probe = h_builder(0.0)
    trunc = probe.trunc
    split = probe.is_factored and probe.sum_parts() is not None
    if split:
        dims = (trunc.na, trunc.nb)
        active = [p is not None for p in probe.sum_parts()]
    else:
        dims = (trunc.dim,)
        active = [True]
    us = [np.eye(d, dtype=complex) for d in dims]
    widths = [None] * len(dims)

    for c0 in range(0, n_steps, _CHUNK):
        starts = all_starts[c0 : c0 + _CHUNK]
        lengths = all_lengths[c0 : c0 + _CHUNK]
        times = (starts[:, None] + lengths[:, None] * np.asarray(nodes)[None, :]).ravel()
        scales = None if np.all(lengths == dt) else lengths / dt
        hs = [h_builder(float(t)) for t in times]
        for mode, dim in enumerate(dims):
            if not active[mode]:
                continue
            if split:
                parts = []
                for h in hs:
                    sp = h.sum_parts()
                    if sp is None:
                        raise ConfigurationError("h_builder switched from mode-separable to dense form")
                    parts.append(sp[mode] if sp[mode] is not None else np.zeros((dim, dim), complex))
                node_h = np.array(parts)
            else:
                node_h = np.array([h.entries for h in hs])
            if widths[mode] is None:
                widths[mode] = _bandwidth(node_h)
            # a stack that outgrows the first chunk's band falls back to the dense path
            us[mode] = _apply_steps(
                us[mode], node_h, dt / hbar, tol_herm, widths[mode], np.asarray(weights), scales
            )

    if split:
        return OperatorMatrix.kron(us[0] if active[0] else None, us[1] if active[1] else None, trunc)
    return OperatorMatrix(us[0], trunc)


def propagate_reference(
    h_builder: Callable[[float], OperatorMatrix],
    config: IntegratorConfig,
    hbar: float = 1.0,
    tol_herm: float = TOL_HERM,
) -> ReferenceResult:
    """Propagator from 0 to ``config.t_final``.

    With ``config.richardson`` the step is also halved and the returned
    estimate is ``||P(U_dt - U_dt/2)P|| * 2^p / (2^p - 1)``, an estimate of the
    error of the returned ``U_dt``.
    """
    u = _run(h_builder, config.step_grid(), config.order, hbar, tol_herm)
    estimate = None
    if config.richardson:
        u_half = _run(h_builder, config.step_grid(config.dt / 2), config.order, hbar, tol_herm)
        gain = 2**config.order
        estimate = interior_distance(u, u_half) * gain / (gain - 1)
        if config.tolerance is not None and estimate > config.tolerance:
            warnings.warn(
                f"reference error estimate {estimate:.3e} exceeds tolerance {config.tolerance:.3e}",
                AccuracyWarning,
                stacklevel=2,
            )
    return ReferenceResult(u, estimate)
