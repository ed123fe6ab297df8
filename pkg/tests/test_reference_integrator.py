import warnings

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from landau_factor import units
from landau_factor.drive_path import Circle, Stadium
from landau_factor.errors import ConfigurationError, NumericalContractError
from landau_factor.fock_algebra import OperatorMatrix, Truncation, interior_distance
from landau_factor.landau_model import PhysicalParams, build_model, hamiltonian_builder
from landau_factor.reference_integrator import (
    CF4_NODES,
    CF4_WEIGHTS,
    AccuracyWarning,
    IntegratorConfig,
    _banded_exp_chain,
    _to_bands,
    propagate_reference,
)

from .conftest import random_matrix

TR = Truncation(10, 8, 2)


def test_cf4_coefficients():
    assert sum(CF4_WEIGHTS) == pytest.approx(0.5)
    assert CF4_NODES[0] + CF4_NODES[1] == pytest.approx(1.0)


@pytest.mark.parametrize(
    "kw", [{"dt": 0.0, "t_final": 1.0}, {"dt": 2.0, "t_final": 1.0}, {"dt": 0.1, "t_final": -1.0}, {"dt": 0.1, "t_final": 1.0, "order": 3}]
)
def test_config_validation(kw):
    with pytest.raises(ConfigurationError):
        IntegratorConfig(**kw)


def test_n_steps_rounds_up():
    assert IntegratorConfig(0.3, 1.0).n_steps == 4
    assert IntegratorConfig(0.1, 1.0).n_steps == 10


@given(st.integers(0, 2**32 - 1), st.integers(0, 3), st.floats(0.01, 2.0))
def test_banded_kernel_matches_expm(seed, w, tau):
    rng = np.random.default_rng(seed)
    n = 9
    h = random_matrix(rng, n, hermitian=True)
    h = np.triu(np.tril(h, w), -w)
    u0 = random_matrix(rng, n)
    out = _banded_exp_chain(u0.copy(), _to_bands(h[None], w), w, tau)
    np.testing.assert_allclose(out, scipy.linalg.expm(-1j * tau * h) @ u0, atol=1e-11 * np.abs(u0).max())


def test_constant_hamiltonian_exact(rng):
    ha = random_matrix(rng, TR.na, hermitian=True)
    ha = np.triu(np.tril(ha, 1), -1)
    hb = np.diag(rng.normal(size=TR.nb))
    h = OperatorMatrix.mode_sum(ha, hb, TR, units.ENERGY)
    for order in (2, 4):
        res = propagate_reference(lambda t: h, IntegratorConfig(0.25, 2.0, order))
        exact = scipy.linalg.expm(-2.0j * h.entries)
        np.testing.assert_allclose(res.u_ref.entries, exact, atol=1e-11)


def test_dense_hamiltonian_falls_back_to_eigh(rng):
    # a generic dense H(t) (neither factored nor banded) goes through eigendecompositions
    h0 = random_matrix(rng, TR.dim, hermitian=True)
    h1 = random_matrix(rng, TR.dim, hermitian=True)

    def build(t):
        return OperatorMatrix(h0 + np.sin(t) * h1, TR, units.ENERGY)

    u4 = propagate_reference(build, IntegratorConfig(0.01, 1.0, 4)).u_ref
    u4f = propagate_reference(build, IntegratorConfig(0.005, 1.0, 4)).u_ref
    assert np.abs(u4.entries - u4f.entries).max() < 1e-8


def test_non_hermitian_rejected(rng):
    h = OperatorMatrix.mode_sum(random_matrix(rng, TR.na), None, TR, units.ENERGY)
    with pytest.raises(NumericalContractError):
        propagate_reference(lambda t: h, IntegratorConfig(0.1, 1.0))


def test_hbar_scaling(rng):
    ha = np.diag(rng.normal(size=TR.na)).astype(complex)
    h = OperatorMatrix.mode_sum(ha, None, TR, units.ENERGY)
    u = propagate_reference(lambda t: h, IntegratorConfig(0.1, 1.0), hbar=0.5).u_ref
    np.testing.assert_allclose(np.diag(u.mode_factor("A")), np.exp(-2j * np.diag(ha)), atol=1e-12)


@pytest.fixture(scope="module")
def driven(small_model):
    path = Circle.through_origin(1.0, 1.0, epsilon=0.5)
    return small_model, path, hamiltonian_builder(small_model, path)


@pytest.mark.parametrize("order,dts", [(2, (0.2, 0.1, 0.05)), (4, (0.4, 0.2, 0.1))])
def test_convergence_order(driven, order, dts):
    model, path, build = driven
    best = propagate_reference(build, IntegratorConfig(0.01, path.t_final, 4)).u_ref
    errs = [interior_distance(propagate_reference(build, IntegratorConfig(dt, path.t_final, order)).u_ref, best) for dt in dts]
    slope = np.polyfit(np.log(dts), np.log(errs), 1)[0]
    assert slope == pytest.approx(order, abs=0.2 * order / 2)


def test_richardson_estimate_and_warning(driven):
    model, path, build = driven
    cfg = IntegratorConfig(0.2, path.t_final, 2, richardson=True, tolerance=1e-12)
    with pytest.warns(AccuracyWarning):
        res = propagate_reference(build, cfg)
    exact = propagate_reference(build, IntegratorConfig(0.01, path.t_final, 4)).u_ref
    true_err = interior_distance(res.u_ref, exact)
    assert 0.5 * true_err < res.error_estimate < 2 * true_err
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        propagate_reference(build, IntegratorConfig(0.2, path.t_final, 4, richardson=True, tolerance=1.0))


def test_step_grid_respects_breakpoints():
    cfg = IntegratorConfig(0.3, 2.0, breakpoints=(0.5, 0.5, 1.45, 3.0, 0.0))
    starts, lengths = cfg.step_grid()
    ends = starts + lengths
    assert np.isclose(ends[-1], 2.0) and np.allclose(starts[1:], ends[:-1])
    assert lengths.max() <= 0.3 + 1e-12
    for b in (0.5, 1.45):
        assert np.isclose(ends, b).any()
    assert cfg.n_steps == starts.size == 2 + 4 + 2


def test_kinked_drive_keeps_fourth_order():
    model = build_model(PhysicalParams(), (0.0, 0.0), Truncation(12, 12, 3))
    path = Stadium(straight=0.7, radius=0.3, speed=0.9)
    build = hamiltonian_builder(model, path)
    kw = dict(t_final=path.t_final, order=4, breakpoints=path.breakpoints())
    best = propagate_reference(build, IntegratorConfig(0.01, **kw)).u_ref
    dts = (0.4, 0.2)
    errs = [interior_distance(propagate_reference(build, IntegratorConfig(dt, **kw)).u_ref, best) for dt in dts]
    assert np.log2(errs[0] / errs[1]) > 3.5
