"""Drive curves R(t) for the translated vector potential.

Every path is defined on a base interval ``[0, T]`` and carries a rate
multiplier ``epsilon``; the effective curve is ``R(epsilon * t)`` on
``[0, T / epsilon]``, with velocity ``epsilon * R'(epsilon * t)``.
Velocities are analytic throughout.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConfigurationError, ContractError, DomainError
from .quadrature import DEFAULT_RTOL, integrate_complex

CLOSURE_TOL = 1e-12


def _vec2(x, name):
    arr = np.asarray(x, dtype=float).reshape(-1)
    if arr.shape != (2,):
        raise ConfigurationError(f"{name} must be a 2-vector, got {x!r}")
    return arr


@dataclass(frozen=True)
class DrivePath:
    """Base class; subclasses implement ``_position``/``_velocity`` in base time."""

    kind: ClassVar[str] = "abstract"

    def __post_init__(self):
        eps = getattr(self, "epsilon")
        if not eps > 0 or not np.isfinite(eps):
            raise ConfigurationError(f"epsilon must be positive, got {eps}")

    # subclass hooks -------------------------------------------------------
    @property
    def base_duration(self) -> float:
        raise NotImplementedError

    def _position(self, u):
        raise NotImplementedError

    def _velocity(self, u):
        raise NotImplementedError

    def _base_breakpoints(self):
        return ()

    # public API -----------------------------------------------------------
    @property
    def t_final(self) -> float:
        return self.base_duration / self.epsilon

    def _check(self, t):
        t = np.asarray(t, dtype=float)
        slack = 1e-12 * max(1.0, self.t_final)
        if np.any(t < -slack) or np.any(t > self.t_final + slack):
            raise DomainError(f"t={t} outside path domain [0, {self.t_final}]")
        return np.clip(t, 0.0, self.t_final)

    def evaluate(self, t) -> np.ndarray:
        """R(t), shape ``(2,)`` for scalar ``t`` or ``(..., 2)`` for arrays."""
        t = self._check(t)
        return self._position(self.epsilon * t)

    def derivative(self, t) -> np.ndarray:
        t = self._check(t)
        return self.epsilon * self._velocity(self.epsilon * t)

    def breakpoints(self) -> tuple[float, ...]:
        """Times where the velocity is only C^0/C^1 (segment junctions)."""
        return tuple(u / self.epsilon for u in self._base_breakpoints())

    def rescaled(self, epsilon: float) -> "DrivePath":
        return dataclasses.replace(self, epsilon=float(epsilon))

    @property
    def is_closed(self) -> bool:
        gap = self.evaluate(self.t_final) - self.evaluate(0.0)
        return bool(np.max(np.abs(gap)) <= CLOSURE_TOL * max(1.0, self.size_scale()))

    def size_scale(self) -> float:
        u = np.linspace(0.0, self.base_duration, 65)
        pts = self._position(u)
        return float(np.max(np.abs(pts - pts[0])))

    def half_displacement(self, t):
        """``d(t) = (R(t) - R(0)) / 2`` and its velocity."""
        return 0.5 * (self.evaluate(t) - self.evaluate(0.0)), 0.5 * self.derivative(t)

    def to_spec(self) -> dict:
        out = {"kind": self.kind}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, np.ndarray):
                v = v.tolist()
            elif isinstance(v, tuple):
                v = [list(map(float, w)) if isinstance(w, (tuple, list, np.ndarray)) else w for w in v]
            out[f.name] = v
        return out


@dataclass(frozen=True)
class Line(DrivePath):
    """Constant-velocity drive ``R = start + velocity * u`` for ``u`` in ``[0, duration]``."""

    start: tuple = (0.0, 0.0)
    velocity: tuple = (0.0, 0.0)
    duration: float = 1.0
    epsilon: float = 1.0
    kind: ClassVar[str] = "line"

    def __post_init__(self):
        object.__setattr__(self, "start", tuple(_vec2(self.start, "start")))
        object.__setattr__(self, "velocity", tuple(_vec2(self.velocity, "velocity")))
        if not self.duration > 0:
            raise ConfigurationError("duration must be positive")
        super().__post_init__()

    @property
    def base_duration(self):
        return float(self.duration)

    def _position(self, u):
        u = np.asarray(u, float)[..., None]
        return np.asarray(self.start) + u * np.asarray(self.velocity)

    def _velocity(self, u):
        u = np.asarray(u, float)[..., None]
        return np.zeros_like(u) + np.asarray(self.velocity)


@dataclass(frozen=True)
class Circle(DrivePath):
    """``R = center + radius * (cos, sin)(start_angle + rate * u)``.

    Positive ``rate`` runs counterclockwise.  The base duration covers
    ``turns`` full revolutions.
    """

    center: tuple = (0.0, 0.0)
    radius: float = 1.0
    rate: float = 1.0
    start_angle: float = 0.0
    turns: float = 1.0
    epsilon: float = 1.0
    kind: ClassVar[str] = "circle"

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(_vec2(self.center, "center")))
        if not self.radius >= 0 or self.rate == 0 or not self.turns > 0:
            raise ConfigurationError("circle needs radius >= 0, rate != 0 and turns > 0")
        super().__post_init__()

    @classmethod
    def through_origin(cls, radius, rate=1.0, **kw):
        """Circle whose start point is the origin (centre at ``(radius, 0)``)."""
        return cls(center=(radius, 0.0), radius=radius, rate=rate, start_angle=np.pi, **kw)

    @property
    def base_duration(self):
        return 2 * np.pi * self.turns / abs(self.rate)

    def _phase(self, u):
        return self.start_angle + self.rate * np.asarray(u, float)

    def _position(self, u):
        th = self._phase(u)
        return np.asarray(self.center) + self.radius * np.stack([np.cos(th), np.sin(th)], axis=-1)

    def _velocity(self, u):
        th = self._phase(u)
        return self.radius * self.rate * np.stack([-np.sin(th), np.cos(th)], axis=-1)


@dataclass(frozen=True)
class SmoothPolyline(DrivePath):
    """Clamped cubic spline through waypoints, at rest at both ends.

    Knots are placed by cumulative chord length and the whole curve takes
    ``duration``.  Repeating the first waypoint at the end gives a loop.
    """

    waypoints: tuple = ((0.0, 0.0), (1.0, 0.0))
    duration: float = 1.0
    epsilon: float = 1.0
    kind: ClassVar[str] = "smooth_polyline"
    _spline: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = np.asarray(self.waypoints, float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ConfigurationError("waypoints must be a list of at least two 2-vectors")
        if not self.duration > 0:
            raise ConfigurationError("duration must be positive")
        chords = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        if np.any(chords == 0):
            raise ConfigurationError("consecutive waypoints must differ")
        object.__setattr__(self, "waypoints", tuple(map(tuple, pts.tolist())))
        knots = np.concatenate([[0.0], np.cumsum(chords)])
        knots *= self.duration / knots[-1]
        spline = CubicSpline(knots, pts, bc_type="clamped")
        object.__setattr__(self, "_spline", (spline, spline.derivative()))
        super().__post_init__()

    @property
    def base_duration(self):
        return float(self.duration)

    def _position(self, u):
        return self._spline[0](u)

    def _velocity(self, u):
        return self._spline[1](u)

    def _base_breakpoints(self):
        return tuple(self._spline[0].x[1:-1])

    def to_spec(self):
        spec = super().to_spec()
        spec.pop("_spline", None)
        return spec


@dataclass(frozen=True)
class Stadium(DrivePath):
    """Rounded-rectangle loop traversed at constant speed.

    Straights of length ``straight`` at ``y = center_y +- radius`` joined by
    semicircular caps.  Starts at the lower-left end of the bottom straight.
    """

    center: tuple = (0.0, 0.0)
    straight: float = 1.0
    radius: float = 1.0
    speed: float = 1.0
    clockwise: bool = False
    epsilon: float = 1.0
    kind: ClassVar[str] = "stadium"

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(_vec2(self.center, "center")))
        if not (self.straight >= 0 and self.radius > 0 and self.speed > 0):
            raise ConfigurationError("stadium needs straight >= 0, radius > 0, speed > 0")
        super().__post_init__()

    @property
    def perimeter(self) -> float:
        return 2 * self.straight + 2 * np.pi * self.radius

    @property
    def enclosed_area(self) -> float:
        """Unsigned area of the loop, ``2 r L + pi r^2``."""
        return 2 * self.radius * self.straight + np.pi * self.radius**2

    @property
    def base_duration(self):
        return self.perimeter / self.speed

    def _arc(self, s):
        """Point and unit tangent at arc length ``s`` on the counterclockwise loop."""
        L, r = self.straight, self.radius
        s = np.mod(np.asarray(s, float), self.perimeter)
        s1, s2, s3 = L, L + np.pi * r, 2 * L + np.pi * r
        # caps: angle measured from the cap centre
        phi_r = -np.pi / 2 + (s - s1) / r
        phi_l = np.pi / 2 + (s - s3) / r
        x = np.select(
            [s < s1, s < s2, s < s3],
            [-L / 2 + s, L / 2 + r * np.cos(phi_r), L / 2 - (s - s2)],
            -L / 2 + r * np.cos(phi_l),
        )
        y = np.select([s < s1, s < s2, s < s3], [-r + 0 * s, r * np.sin(phi_r), r + 0 * s], r * np.sin(phi_l))
        tx = np.select([s < s1, s < s2, s < s3], [1 + 0 * s, -np.sin(phi_r), -1 + 0 * s], -np.sin(phi_l))
        ty = np.select([s < s1, s < s2, s < s3], [0 * s, np.cos(phi_r), 0 * s], np.cos(phi_l))
        pos = np.stack([x, y], axis=-1) + np.asarray(self.center)
        return pos, np.stack([tx, ty], axis=-1)

    def _position(self, u):
        u = np.asarray(u, float)
        s = self.speed * (self.base_duration - u if self.clockwise else u)
        return self._arc(s)[0]

    def _velocity(self, u):
        u = np.asarray(u, float)
        s = self.speed * (self.base_duration - u if self.clockwise else u)
        tangent = self._arc(s)[1]
        return (-self.speed if self.clockwise else self.speed) * tangent

    def _base_breakpoints(self):
        L, r = self.straight, self.radius
        cuts = np.array([L, L + np.pi * r, 2 * L + np.pi * r]) / self.speed
        if self.clockwise:
            cuts = self.base_duration - cuts[::-1]
        return tuple(cuts)


PATH_KINDS = {cls.kind: cls for cls in (Line, Circle, SmoothPolyline, Stadium)}


def path_from_spec(spec: dict) -> DrivePath:
    """Build a path from a plain mapping with a ``kind`` key (config files)."""
    spec = dict(spec)
    kind = spec.pop("kind", None)
    if kind not in PATH_KINDS:
        raise ConfigurationError(f"unknown path kind {kind!r}; expected one of {sorted(PATH_KINDS)}")
    cls = PATH_KINDS[kind]
    names = {f.name for f in dataclasses.fields(cls) if f.init}
    unknown = set(spec) - names
    if unknown:
        raise ConfigurationError(f"unknown {kind} parameters: {sorted(unknown)}")
    if kind == "smooth_polyline" and "waypoints" in spec:
        spec["waypoints"] = tuple(tuple(p) for p in spec["waypoints"])
    try:
        return cls(**spec)
    except TypeError as exc:
        raise ConfigurationError(str(exc)) from None


def signed_area_d_path(path: DrivePath, rtol: float = DEFAULT_RTOL) -> float:
    """Signed area swept by ``d(t) = (R(t) - R(0))/2`` around a closed loop.

    Equals a quarter of the signed area of the R loop; positive for
    counterclockwise traversal.
    """
    if not path.is_closed:
        raise ContractError("signed area is only defined for closed paths")

    def integrand(t):
        d, dd = path.half_displacement(t)
        return 0.5 * (d[0] * dd[1] - d[1] * dd[0])

    panel = path.t_final / 16
    return integrate_complex(integrand, 0.0, path.t_final, rtol=rtol, panel=panel, points=path.breakpoints()).real
