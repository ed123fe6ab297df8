"""Adaptive quadrature for the path integrals.

Thin layer over QUADPACK (``scipy.integrate.quad``, adaptive Gauss-Kronrod
21-point rule).  Long oscillatory ranges are cut into panels first so that
each QUADPACK call sees only a few oscillations, and the error target is set
relative to the integral of ``|f|`` rather than to the (possibly tiny,
cancellation-dominated) result.
"""

from __future__ import annotations

import warnings
from typing import Callable, Iterable

import numpy as np
from scipy import integrate

from .errors import QuadratureError

DEFAULT_RTOL = 1e-10

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


def panel_grid(a: float, b: float, panel: float | None = None, points: Iterable[float] = ()) -> np.ndarray:
    """Sorted breakpoints covering ``[a, b]``: user points plus uniform cuts of width <= ``panel``."""
    if b < a:
        raise ValueError(f"empty interval [{a}, {b}]")
    pts = {float(a), float(b)}
    pts.update(float(p) for p in points if a < p < b)
    grid = np.array(sorted(pts))
    if panel is None or panel <= 0:
        return grid
    out = [grid[0]]
    for lo, hi in zip(grid[:-1], grid[1:]):
        n = max(1, int(np.ceil((hi - lo) / panel - 1e-12)))
        out.extend(np.linspace(lo, hi, n + 1)[1:])
    return np.array(out)


def _abs_scale(f, lo, hi):
    x = 0.5 * (hi - lo) * _GL_X + 0.5 * (hi + lo)
    vals = np.array([abs(f(xx)) for xx in x])
    return 0.5 * (hi - lo) * float(_GL_W @ vals)


def _quad_real(g, lo, hi, epsabs, epsrel, limit):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(g, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=limit)
        except integrate.IntegrationWarning as exc:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                val, err = integrate.quad(g, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=limit)
            if err > 10 * max(epsabs, epsrel * abs(val)):
                raise QuadratureError(
                    f"quadrature did not converge: {exc}", interval=(lo, hi), estimate=val, error=err
                ) from None
    return val, err


def integrate_panel(
    f: Callable[[float], complex], lo: float, hi: float, *, rtol=DEFAULT_RTOL, limit=200, magnitude=None
):
    """Integral of complex ``f`` over one panel, returns ``(value, error_estimate)``.

    ``magnitude`` optionally bounds ``|f|`` pointwise; use it when ``f`` is a
    difference of terms that cancel, so the error target is not set by roundoff.
    """
    if hi == lo:
        return 0j, 0.0
    epsabs = rtol * max(_abs_scale(magnitude or f, lo, hi), 1e-300)
    re, e1 = _quad_real(lambda x: f(x).real, lo, hi, epsabs, rtol, limit)
    im, e2 = _quad_real(lambda x: f(x).imag, lo, hi, epsabs, rtol, limit)
    return complex(re, im), e1 + e2


def integrate_complex(
    f: Callable[[float], complex],
    a: float,
    b: float,
    *,
    rtol: float = DEFAULT_RTOL,
    panel: float | None = None,
    points: Iterable[float] = (),
) -> complex:
    """Adaptive integral of a complex scalar function over ``[a, b]``."""
    grid = panel_grid(a, b, panel, points)
    total = 0j
    for lo, hi in zip(grid[:-1], grid[1:]):
        total += integrate_panel(f, lo, hi, rtol=rtol)[0]
    return total


def cumulative_complex(f, grid: np.ndarray, *, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """``[int_{grid[0]}^{grid[k]} f for k]`` by panel-wise adaptive quadrature."""
    grid = np.asarray(grid, float)
    out = np.zeros(grid.size, complex)
    for k in range(1, grid.size):
        out[k] = out[k - 1] + integrate_panel(f, grid[k - 1], grid[k], rtol=rtol)[0]
    return out
