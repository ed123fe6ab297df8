"""Truncated two-mode bosonic operator algebra.

Basis ordering is row-major over ``(n_a, n_b)``: ``index = n_a * nb + n_b``,
which is exactly the ordering produced by ``np.kron(op_a, op_b)``.

Mode A carries the cyclotron (kinetic momentum) oscillator, mode B the
guiding-centre oscillator.  Nothing in this module knows that, though.

Operators that act on one mode at a time are kept in factored form
(``A (x) B`` or ``A (x) 1 + 1 (x) B``) and only expanded to a dense matrix
when a caller asks for ``entries``.  Products and sums of factored operators
stay factored, so the full ``na*nb`` square is materialised only where it is
actually needed (norms of differences, generic products).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.sparse.linalg import ArpackError, LinearOperator, svds

from .errors import ConfigurationError, NumericalContractError
from .units import DIMENSIONLESS, Dimension

TOL_UNITARITY = 1e-10
TOL_HERM = 1e-10
TOL_NORM = 1e-10

# interior blocks above this size are normed iteratively when the operands are factored
_DENSE_NORM_MAX = 400


class Mode(str, enum.Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class Truncation:
    """Fock cutoffs for both modes plus the edge buffer excluded from checks.

    ``buffer=None`` picks ``max(4, n/4)`` with ``n = min(na, nb)``, clamped so
    that the buffer stays below half the smaller cutoff.
    """

    na: int
    nb: int
    buffer: int | None = None

    def __post_init__(self):
        for name in ("na", "nb"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise ConfigurationError(f"{name} must be an integer, got {v!r}")
            if v < 4:
                raise ConfigurationError(f"{name}={v} is too small (need >= 4)")
        n = min(self.na, self.nb)
        if self.buffer is None:
            object.__setattr__(self, "buffer", min(max(4, n // 4), (n - 1) // 2))
        buf = self.buffer
        if isinstance(buf, bool) or not isinstance(buf, (int, np.integer)) or buf < 0:
            raise ConfigurationError(f"buffer must be a non-negative integer, got {buf!r}")
        if 2 * buf >= n:
            raise ConfigurationError(f"buffer={buf} must be < min(na, nb)/2 = {n / 2}")
        if n - buf < 2:
            raise ConfigurationError("interior window must hold at least 2 levels per mode")

    @property
    def dim(self) -> int:
        return self.na * self.nb

    @property
    def interior_a(self) -> int:
        return self.na - self.buffer

    @property
    def interior_b(self) -> int:
        return self.nb - self.buffer

    def index(self, n_a: int, n_b: int) -> int:
        if not (0 <= n_a < self.na and 0 <= n_b < self.nb):
            raise ConfigurationError(f"level ({n_a}, {n_b}) outside truncation {self}")
        return n_a * self.nb + n_b

    def interior_indices(self) -> np.ndarray:
        ia, ib = np.meshgrid(np.arange(self.interior_a), np.arange(self.interior_b), indexing="ij")
        return (ia * self.nb + ib).ravel()

    def padded(self, pad: int) -> "Truncation":
        """``pad`` extra levels per mode, for oracles that are restricted back to ``self``.

        The buffer grows by ``pad`` so the interior is unchanged, clamped to the
        largest legal buffer when that would break the half-size rule (the
        interior then grows, which only matters if the result is used directly).
        """
        na, nb = self.na + pad, self.nb + pad
        return Truncation(na, nb, min(self.buffer + pad, (min(na, nb) - 1) // 2))

    def contains(self, other: "Truncation") -> bool:
        return self.na >= other.na and self.nb >= other.nb


def _mode_dims(trunc: Truncation) -> tuple[int, int]:
    return trunc.na, trunc.nb


def lowering_matrix(n: int) -> np.ndarray:
    """Single-mode annihilation operator on levels ``0..n-1``."""
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1).astype(complex)


def number_matrix(n: int) -> np.ndarray:
    return np.diag(np.arange(n, dtype=float)).astype(complex)


def _check_hermitian(h: np.ndarray, tol: float, what: str = "matrix"):
    scale = max(1.0, float(np.abs(h).max(initial=0.0)))
    err = float(np.abs(h - h.conj().swapaxes(-1, -2)).max(initial=0.0))
    if err > tol * scale:
        raise NumericalContractError(f"{what} is not Hermitian: max|H - H^dag| = {err:.3e}")


def expm_hermitian(h: np.ndarray, tau: complex = 1.0, tol_herm: float = TOL_HERM) -> np.ndarray:
    """``exp(-1j * tau * h)`` for Hermitian ``h`` (or a stack of them).

    Uses the eigendecomposition, so the result is unitary to machine precision
    whenever ``tau`` is real.
    """
    _check_hermitian(h, tol_herm)
    w, v = np.linalg.eigh(h)
    phases = np.exp(-1j * tau * w)
    return (v * phases[..., None, :]) @ v.conj().swapaxes(-1, -2)


def expm_skew(g: np.ndarray, tol_herm: float = TOL_HERM) -> np.ndarray:
    """Exponential of a skew-Hermitian matrix through ``i g``'s eigenbasis."""
    h = 1j * g
    _check_hermitian(h, tol_herm, "i*G")
    return expm_hermitian(0.5 * (h + h.conj().T), 1.0)


class OperatorMatrix:
    """Complex operator on the truncated two-mode space.

    Construct dense operators with ``OperatorMatrix(entries, trunc)``, or
    factored ones with :meth:`kron` / :meth:`mode_sum`.  A factor of ``None``
    stands for the identity (kron) or zero (mode sum) on that mode.
    Instances are treated as immutable: the arrays are flagged read-only.
    """

    __slots__ = ("trunc", "unit", "_kind", "_a", "_b", "__dict__")

    def __init__(self, entries, trunc: Truncation, unit: Dimension = DIMENSIONLESS):
        entries = np.array(entries, dtype=complex)
        if entries.shape != (trunc.dim, trunc.dim):
            raise ConfigurationError(
                f"entries have shape {entries.shape}, truncation needs {(trunc.dim, trunc.dim)}"
            )
        entries.flags.writeable = False
        self.trunc = trunc
        self.unit = unit
        self._kind = "dense"
        self._a = self._b = None
        self.__dict__["entries"] = entries

    @classmethod
    def _factored(cls, kind, a, b, trunc, unit):
        obj = cls.__new__(cls)
        obj.trunc = trunc
        obj.unit = unit
        obj._kind = kind
        na, nb = _mode_dims(trunc)
        if a is not None:
            a = np.array(a, dtype=complex)
            if a.shape != (na, na):
                raise ConfigurationError(f"mode-A factor has shape {a.shape}, expected {(na, na)}")
            a.flags.writeable = False
        if b is not None:
            b = np.array(b, dtype=complex)
            if b.shape != (nb, nb):
                raise ConfigurationError(f"mode-B factor has shape {b.shape}, expected {(nb, nb)}")
            b.flags.writeable = False
        obj._a, obj._b = a, b
        return obj

    @classmethod
    def kron(cls, a, b, trunc: Truncation, unit: Dimension = DIMENSIONLESS) -> "OperatorMatrix":
        """``a (x) b``; ``None`` means identity on that mode."""
        return cls._factored("kron", a, b, trunc, unit)

    @classmethod
    def mode_sum(cls, a, b, trunc: Truncation, unit: Dimension = DIMENSIONLESS) -> "OperatorMatrix":
        """``a (x) 1 + 1 (x) b``; ``None`` means zero on that mode."""
        return cls._factored("sum", a, b, trunc, unit)

    @classmethod
    def identity(cls, trunc: Truncation) -> "OperatorMatrix":
        return cls.kron(None, None, trunc)

    # -- structure helpers -------------------------------------------------
    @property
    def dim(self) -> int:
        return self.trunc.dim

    @property
    def is_factored(self) -> bool:
        return self._kind != "dense"

    def kron_factors(self):
        """``(a, b)`` with ``self == a (x) b`` if known, else ``None``."""
        na, nb = _mode_dims(self.trunc)
        if self._kind == "kron":
            return self._a, self._b
        if self._kind == "sum":
            if self._b is None:
                return (self._a if self._a is not None else np.zeros((na, na), complex)), None
            if self._a is None:
                return None, self._b
        return None

    def sum_parts(self):
        """``(a, b)`` with ``self == a (x) 1 + 1 (x) b`` if known, else ``None``."""
        na, nb = _mode_dims(self.trunc)
        if self._kind == "sum":
            return self._a, self._b
        if self._kind == "kron":
            if self._b is None:
                return (self._a if self._a is not None else np.eye(na, dtype=complex)), None
            if self._a is None:
                return None, self._b
        return None

    @cached_property
    def entries(self) -> np.ndarray:
        na, nb = _mode_dims(self.trunc)
        a, b = self._a, self._b
        if self._kind == "kron":
            a = np.eye(na, dtype=complex) if a is None else a
            b = np.eye(nb, dtype=complex) if b is None else b
            out = np.kron(a, b)
        else:
            out = np.zeros((self.dim, self.dim), complex)
            if a is not None:
                out += np.kron(a, np.eye(nb))
            if b is not None:
                out += np.kron(np.eye(na), b)
        out.flags.writeable = False
        return out

    # -- algebra -----------------------------------------------------------
    def _check(self, other: "OperatorMatrix"):
        if not isinstance(other, OperatorMatrix):
            raise TypeError(f"expected OperatorMatrix, got {type(other).__name__}")
        if other.trunc != self.trunc:
            raise ConfigurationError(f"truncation mismatch: {self.trunc} vs {other.trunc}")

    def adjoint(self) -> "OperatorMatrix":
        if self._kind == "dense":
            return OperatorMatrix(self.entries.conj().T, self.trunc, self.unit)
        conj = lambda x: None if x is None else x.conj().T  # noqa: E731
        return OperatorMatrix._factored(self._kind, conj(self._a), conj(self._b), self.trunc, self.unit)

    @property
    def H(self) -> "OperatorMatrix":
        return self.adjoint()

    def scaled(self, factor: complex, unit: Dimension = DIMENSIONLESS) -> "OperatorMatrix":
        """Multiply by a scalar carrying dimension ``unit``."""
        unit = self.unit * unit
        if self._kind == "dense":
            return OperatorMatrix(factor * self.entries, self.trunc, unit)
        if self._kind == "sum":
            sc = lambda x: None if x is None else factor * x  # noqa: E731
            return OperatorMatrix.mode_sum(sc(self._a), sc(self._b), self.trunc, unit)
        a = self._a
        if a is None:
            a = np.eye(self.trunc.na, dtype=complex)
        return OperatorMatrix.kron(factor * a, self._b, self.trunc, unit)

    def with_unit(self, unit: Dimension) -> "OperatorMatrix":
        out = OperatorMatrix.__new__(OperatorMatrix)
        out.trunc, out.unit, out._kind, out._a, out._b = self.trunc, unit, self._kind, self._a, self._b
        if "entries" in self.__dict__:
            out.__dict__["entries"] = self.__dict__["entries"]
        return out

    def __mul__(self, factor):
        if isinstance(factor, OperatorMatrix):
            return NotImplemented
        return self.scaled(factor)

    __rmul__ = __mul__

    def __truediv__(self, factor):
        return self.scaled(1.0 / factor)

    def __neg__(self):
        return self.scaled(-1.0)

    def __add__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self._check(other)
        if self.unit != other.unit:
            raise ConfigurationError(f"adding operators with units {self.unit} and {other.unit}")
        p, q = self.sum_parts(), other.sum_parts()
        if p is not None and q is not None:
            add = lambda x, y: y if x is None else (x if y is None else x + y)  # noqa: E731
            return OperatorMatrix.mode_sum(add(p[0], q[0]), add(p[1], q[1]), self.trunc, self.unit)
        return OperatorMatrix(self.entries + other.entries, self.trunc, self.unit)

    def __sub__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self + (-other)

    def __matmul__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self._check(other)
        unit = self.unit * other.unit
        p, q = self.kron_factors(), other.kron_factors()
        if p is not None and q is not None:
            mul = lambda x, y: y if x is None else (x if y is None else x @ y)  # noqa: E731
            return OperatorMatrix.kron(mul(p[0], q[0]), mul(p[1], q[1]), self.trunc, unit)
        return OperatorMatrix(self.entries @ other.entries, self.trunc, unit)

    def mode_factor(self, mode: Mode | str) -> np.ndarray:
        """Single-mode matrix of a factored operator (identity / zero filled in)."""
        parts = self.kron_factors() if self._kind == "kron" else self.sum_parts()
        if parts is None:
            raise ValueError("operator is not factored")
        mode = Mode(mode)
        n = self.trunc.na if mode is Mode.A else self.trunc.nb
        x = parts[0] if mode is Mode.A else parts[1]
        if x is None:
            return np.eye(n, dtype=complex) if self._kind == "kron" else np.zeros((n, n), complex)
        return x

    def __repr__(self):
        return f"OperatorMatrix(dim={self.dim}, kind={self._kind}, unit={self.unit}, trunc={self.trunc})"


@dataclass(frozen=True)
class StateVector:
    amplitudes: np.ndarray
    trunc: Truncation

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex).ravel()
        if amp.shape != (self.trunc.dim,):
            raise ConfigurationError(f"state has length {amp.size}, truncation needs {self.trunc.dim}")
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        return StateVector(self.amplitudes / self.norm, self.trunc)

    def as_grid(self) -> np.ndarray:
        """Amplitudes reshaped to ``(na, nb)``."""
        return self.amplitudes.reshape(self.trunc.na, self.trunc.nb)

    def populations_a(self) -> np.ndarray:
        """Probability per mode-A level, summed over mode B."""
        return (np.abs(self.as_grid()) ** 2).sum(axis=1)

    def interior_weight(self) -> float:
        g = self.as_grid()[: self.trunc.interior_a, : self.trunc.interior_b]
        return float((np.abs(g) ** 2).sum())


def basis_state(n_a: int, n_b: int, trunc: Truncation) -> StateVector:
    amp = np.zeros(trunc.dim, complex)
    amp[trunc.index(n_a, n_b)] = 1.0
    return StateVector(amp, trunc)


def product_state(psi_a, psi_b, trunc: Truncation) -> StateVector:
    return StateVector(np.kron(np.asarray(psi_a, complex), np.asarray(psi_b, complex)), trunc)


def coherent_amplitudes(alpha: complex, n: int) -> np.ndarray:
    """``e^{-|alpha|^2/2} alpha^k / sqrt(k!)`` for ``k < n``, by recurrence."""
    out = np.empty(n, complex)
    out[0] = np.exp(-0.5 * abs(alpha) ** 2)
    for k in range(1, n):
        out[k] = out[k - 1] * alpha / np.sqrt(k)
    return out


def ladder_lower(mode: Mode | str, trunc: Truncation) -> OperatorMatrix:
    """Annihilation operator of ``mode`` embedded in the two-mode space."""
    if not isinstance(trunc, Truncation):
        raise ConfigurationError(f"expected a Truncation, got {trunc!r}")
    mode = Mode(mode)
    if mode is Mode.A:
        return OperatorMatrix.mode_sum(lowering_matrix(trunc.na), None, trunc)
    return OperatorMatrix.mode_sum(None, lowering_matrix(trunc.nb), trunc)


def ladder_raise(mode: Mode | str, trunc: Truncation) -> OperatorMatrix:
    return ladder_lower(mode, trunc).adjoint()


def number_operator(mode: Mode | str, trunc: Truncation) -> OperatorMatrix:
    mode = Mode(mode)
    if mode is Mode.A:
        return OperatorMatrix.mode_sum(number_matrix(trunc.na), None, trunc)
    return OperatorMatrix.mode_sum(None, number_matrix(trunc.nb), trunc)


def interior_projector(trunc: Truncation) -> OperatorMatrix:
    pa = np.diag((np.arange(trunc.na) < trunc.interior_a).astype(complex))
    pb = np.diag((np.arange(trunc.nb) < trunc.interior_b).astype(complex))
    return OperatorMatrix.kron(pa, pb, trunc)


def compose(ops: Sequence[OperatorMatrix]) -> OperatorMatrix:
    """Operator product ``ops[0] @ ops[1] @ ...`` (the rightmost acts first)."""
    ops = list(ops)
    if not ops:
        raise ValueError("compose needs at least one operator")
    out = ops[-1]
    for op in reversed(ops[:-1]):
        out = op @ out
    return out


def adjoint(op: OperatorMatrix) -> OperatorMatrix:
    return op.adjoint()


def commutator(x: OperatorMatrix, y: OperatorMatrix) -> OperatorMatrix:
    return x @ y - y @ x


def apply(op: OperatorMatrix, psi: StateVector) -> StateVector:
    if op.trunc != psi.trunc:
        raise ConfigurationError(f"truncation mismatch: {op.trunc} vs {psi.trunc}")
    if op.is_factored:
        grid = psi.as_grid()
        kf = op.kron_factors()
        if kf is not None:
            a, b = kf
            if a is not None:
                grid = a @ grid
            if b is not None:
                grid = grid @ b.T
            return StateVector(grid.ravel(), psi.trunc)
        a, b = op.sum_parts()
        out = np.zeros_like(grid)
        if a is not None:
            out += a @ grid
        if b is not None:
            out += grid @ b.T
        return StateVector(out.ravel(), psi.trunc)
    return StateVector(op.entries @ psi.amplitudes, psi.trunc)


def expectation(op: OperatorMatrix, psi: StateVector) -> complex:
    return complex(np.vdot(psi.amplitudes, apply(op, psi).amplitudes))


def interior_block(op: OperatorMatrix) -> np.ndarray:
    """``P op P`` restricted to the interior index set (as a dense array)."""
    t = op.trunc
    ia, ib = t.interior_a, t.interior_b
    if op.is_factored:
        kf = op.kron_factors()
        if kf is not None:
            a, b = kf
            a = np.eye(ia) if a is None else a[:ia, :ia]
            b = np.eye(ib) if b is None else b[:ib, :ib]
            return np.kron(a, b)
        a, b = op.sum_parts()
        out = np.zeros((ia * ib, ia * ib), complex)
        if a is not None:
            out += np.kron(a[:ia, :ia], np.eye(ib))
        if b is not None:
            out += np.kron(np.eye(ia), b[:ib, :ib])
        return out
    idx = t.interior_indices()
    return op.entries[np.ix_(idx, idx)]


def _single_mode(op: OperatorMatrix):
    """``(mode, matrix)`` if ``op`` acts on one mode only (``matrix`` None means identity)."""
    if op._kind == "dense":
        return None
    a, b = op._a, op._b
    if op._kind == "kron":
        if b is None:
            return (Mode.A, a) if a is not None else (None, None)
        if a is None:
            return Mode.B, b
        return None
    if b is None:
        return Mode.A, (a if a is not None else np.zeros((op.trunc.na, op.trunc.na), complex))
    if a is None:
        return Mode.B, b
    return None


def _mode_block(mode, m, trunc):
    k = trunc.interior_a if mode is Mode.A else trunc.interior_b
    return np.eye(k, dtype=complex) if m is None else m[:k, :k]


def interior_norm(op: OperatorMatrix) -> float:
    """Spectral norm of ``P op P``."""
    single = _single_mode(op)
    if single is not None:
        mode, m = single
        return float(np.linalg.norm(_mode_block(mode or Mode.A, m, op.trunc), 2))
    block = interior_block(op)
    if block.size == 0:
        return 0.0
    return float(np.linalg.norm(block, 2))


def _interior_action(op: OperatorMatrix):
    """``G -> P op P`` acting on interior amplitude grids of shape ``(ia, ib)``."""
    t = op.trunc
    ia, ib = t.interior_a, t.interior_b
    a = None if op._a is None else op._a[:ia, :ia]
    b = None if op._b is None else op._b[:ib, :ib]
    if op._kind == "kron":

        def act(g):
            if a is not None:
                g = a @ g
            if b is not None:
                g = g @ b.T
            return g

        return act
    if op._kind == "sum":

        def act_sum(g):
            out = np.zeros_like(g)
            if a is not None:
                out += a @ g
            if b is not None:
                out += g @ b.T
            return out

        return act_sum
    block = interior_block(op)
    return lambda g: (block @ g.ravel()).reshape(ia, ib)


def _factored_distance(x: OperatorMatrix, y: OperatorMatrix) -> float:
    t = x.trunc
    ia, ib = t.interior_a, t.interior_b
    fx, fy = _interior_action(x), _interior_action(y)
    gx, gy = _interior_action(x.adjoint()), _interior_action(y.adjoint())

    def mv(v):
        g = np.asarray(v, complex).reshape(ia, ib)
        return (fx(g) - fy(g)).ravel()

    def rmv(v):
        g = np.asarray(v, complex).reshape(ia, ib)
        return (gx(g) - gy(g)).ravel()

    n = ia * ib
    op = LinearOperator((n, n), matvec=mv, rmatvec=rmv, dtype=complex)
    v0 = np.full(n, 1.0 / np.sqrt(n), complex) + 1e-3 * np.cos(np.arange(n))
    try:
        return float(svds(op, k=1, return_singular_vectors=False, v0=v0, tol=1e-12)[0])
    except ArpackError:
        # ARPACK gives up on an operator that is exactly zero (or fails to converge)
        probe = np.random.default_rng(0).normal(size=(4, n))
        if not any(np.any(mv(v)) for v in probe):
            return 0.0
        return float(np.linalg.norm(interior_block(x) - interior_block(y), 2))


def interior_distance(x: OperatorMatrix, y: OperatorMatrix) -> float:
    """``||P (x - y) P||`` without forming ``x - y`` on the full space.

    Operators acting on the same single mode are compared on that mode alone
    (``a (x) 1`` has the norm of ``a``); other factored pairs go through an
    iterative norm that only ever applies the single-mode factors.
    """
    if x.trunc != y.trunc:
        raise ConfigurationError(f"truncation mismatch: {x.trunc} vs {y.trunc}")
    sx, sy = _single_mode(x), _single_mode(y)
    if sx is not None and sy is not None:
        modes = {m for m in (sx[0], sy[0]) if m is not None}
        if len(modes) <= 1:
            mode = modes.pop() if modes else Mode.A
            diff = _mode_block(mode, sx[1], x.trunc) - _mode_block(mode, sy[1], x.trunc)
            return float(np.linalg.norm(diff, 2))
    t = x.trunc
    if x.is_factored and y.is_factored and t.interior_a * t.interior_b > _DENSE_NORM_MAX:
        return _factored_distance(x, y)
    return float(np.linalg.norm(interior_block(x) - interior_block(y), 2))


def unitarity_defect(u: OperatorMatrix) -> float:
    """``||P (U^dag U - 1) P||``."""
    return interior_distance(u.adjoint() @ u, OperatorMatrix.identity(u.trunc))


def exp_skew_hermitian(g: OperatorMatrix, tol_herm: float = TOL_HERM) -> OperatorMatrix:
    """``exp(G)`` for skew-Hermitian ``G``.

    The generator must be dimensionless.  Mode-separable generators are
    exponentiated one mode at a time, which is exact because the two parts
    commute.
    """
    if not g.unit.is_dimensionless:
        raise NumericalContractError(f"exponent carries dimension {g.unit}")
    parts = g.sum_parts() if g.is_factored else None
    if parts is not None:
        a, b = parts
        ea = None if a is None else expm_skew(a, tol_herm)
        eb = None if b is None else expm_skew(b, tol_herm)
        return OperatorMatrix.kron(ea, eb, g.trunc)
    return OperatorMatrix(expm_skew(g.entries, tol_herm), g.trunc)


def restrict(op: OperatorMatrix, trunc: Truncation) -> OperatorMatrix:
    """Sub-block of ``op`` on the smaller truncation ``trunc`` (levels kept from 0)."""
    big = op.trunc
    if not big.contains(trunc):
        raise ConfigurationError(f"cannot restrict {big} to larger {trunc}")
    na, nb = trunc.na, trunc.nb
    if op.is_factored:
        kind = op._kind
        cut_a = lambda x: None if x is None else x[:na, :na]  # noqa: E731
        cut_b = lambda x: None if x is None else x[:nb, :nb]  # noqa: E731
        return OperatorMatrix._factored(kind, cut_a(op._a), cut_b(op._b), trunc, op.unit)
    ia, ib = np.meshgrid(np.arange(na), np.arange(nb), indexing="ij")
    idx = (ia * big.nb + ib).ravel()
    return OperatorMatrix(op.entries[np.ix_(idx, idx)], trunc, op.unit)


def restrict_state(psi: StateVector, trunc: Truncation) -> StateVector:
    grid = psi.as_grid()[: trunc.na, : trunc.nb]
    return StateVector(grid.ravel(), trunc)


def is_hermitian(op: OperatorMatrix, tol: float = TOL_HERM) -> bool:
    try:
        if op._kind == "sum":
            for m in (op._a, op._b):
                if m is not None:
                    _check_hermitian(m, tol)
        else:
            _check_hermitian(op.entries, tol)
    except NumericalContractError:
        return False
    return True


__all__ = [
    "Mode",
    "Truncation",
    "OperatorMatrix",
    "StateVector",
    "TOL_HERM",
    "TOL_NORM",
    "TOL_UNITARITY",
    "adjoint",
    "apply",
    "basis_state",
    "coherent_amplitudes",
    "commutator",
    "compose",
    "exp_skew_hermitian",
    "expectation",
    "expm_hermitian",
    "expm_skew",
    "interior_block",
    "interior_distance",
    "interior_norm",
    "interior_projector",
    "is_hermitian",
    "ladder_lower",
    "ladder_raise",
    "lowering_matrix",
    "number_operator",
    "product_state",
    "restrict",
    "restrict_state",
    "unitarity_defect",
]
