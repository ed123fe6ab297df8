import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from landau_factor.errors import QuadratureError
from landau_factor.quadrature import cumulative_complex, integrate_complex, integrate_panel, panel_grid


def test_panel_grid_includes_points_and_bounds():
    g = panel_grid(0.0, 10.0, 3.0, [2.5, 7.0, 12.0])
    assert g[0] == 0 and g[-1] == 10
    assert 2.5 in g and 7.0 in g and 12.0 not in g
    assert np.all(np.diff(g) <= 3.0 + 1e-12)
    with pytest.raises(ValueError):
        panel_grid(1.0, 0.0)


@given(st.floats(0.1, 40.0), st.floats(1.0, 200.0))
def test_oscillatory_exponential(omega, t):
    f = lambda s: np.exp(1j * omega * s)  # noqa: E731
    exact = (np.exp(1j * omega * t) - 1) / (1j * omega)
    val = integrate_complex(f, 0.0, t, panel=np.pi / omega)
    assert abs(val - exact) <= 1e-9 * t


def test_cancellation_dominated_integral():
    # sin over many whole periods integrates to ~0; the tolerance is relative to int |f|
    val = integrate_complex(lambda s: np.sin(s) + 0j, 0.0, 200 * np.pi, panel=np.pi)
    assert abs(val) < 1e-9


def test_cumulative_matches_pointwise():
    f = lambda s: s**2 * np.exp(1j * s)  # noqa: E731
    grid = np.linspace(0, 5, 6)
    cum = cumulative_complex(f, grid)
    for k, t in enumerate(grid):
        assert abs(cum[k] - integrate_complex(f, 0.0, t)) < 1e-10


def test_panel_error_estimate_and_empty_panel():
    val, err = integrate_panel(lambda s: np.cos(s) + 0j, 0.0, 1.0)
    assert abs(val - np.sin(1.0)) < 1e-13 and err < 1e-10
    assert integrate_panel(lambda s: 1.0 + 0j, 2.0, 2.0) == (0j, 0.0)


def test_nonconvergence_raises():
    with pytest.raises(QuadratureError) as info:
        integrate_panel(lambda s: np.sin(1.0 / s) / s + 0j, 1e-8, 1.0, limit=5)
    assert info.value.interval == (1e-8, 1.0)
    assert "interval" in str(info.value)
