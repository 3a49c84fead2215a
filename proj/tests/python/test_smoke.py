import math

import numpy as np
import pytest

import eisheat


def test_grid_and_operator():
    op = eisheat.build_operator("block2", 32, -0.25)
    assert len(op.grid) == 66
    assert op.period == 2
    v = np.cos(op.grid.coordinates())
    qv = op.apply(v)
    assert np.allclose(qv, op.dense() @ v, rtol=0, atol=1e-10 * np.abs(qv).max())
    # second derivative of cos is -cos, up to first-order truncation
    assert np.abs(qv + v).max() < 0.05


def test_complex_apply_matches_real_parts():
    op = eisheat.build_operator("block3-high", 16, -0.385)
    x = op.grid.coordinates()
    z = np.exp(2j * x)
    out = op.apply(z)
    assert np.allclose(out.real, op.apply(np.cos(2 * x)))


def test_stability_and_symbol():
    assert eisheat.stability_scan(eisheat.build_operator("block2", 64, 0.3)).stable
    assert not eisheat.stability_scan(eisheat.build_operator("block2", 64, 0.6)).stable
    op = eisheat.build_operator("block2", 32, 0.1)
    lam = eisheat.symbol_eigenvalues(op, 3)
    cf = eisheat.closed_form_block2_eigs(0.1, 3, 32)
    assert lam[0].real == pytest.approx(cf["q1"], rel=1e-10)
    assert lam[1].real == pytest.approx(cf["q2"], rel=1e-10)
    assert eisheat.alias_wavenumber(3, 32) == -30


def test_solve_and_convergence():
    res = eisheat.solve("block2", -0.25, "exp-cos", n=64, t=1.0)
    assert res["numerical"].shape == (130,)
    assert res["error"] < 1e-4
    rep = eisheat.run_convergence("std2", 0.0, ladder=[16, 32, 64], t=0.5)
    assert rep["ok"]
    assert rep["fitted_order"] == pytest.approx(2.0, abs=0.1)


def test_filters_and_costs():
    v = np.random.default_rng(0).normal(size=64) + 0j
    once = eisheat.spectral_filter(v)
    assert np.allclose(eisheat.spectral_filter(once), once, atol=1e-13)
    w = eisheat.local_kernel_weights()
    assert math.isclose(sum(w), 1.0)
    assert eisheat.stencil_cost(eisheat.build_operator("block3-low", 32, 1.34)) == (1, "2 2/3", "3 2/3")


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        eisheat.build_operator("block9", 32)
    with pytest.raises(ValueError):
        eisheat.BlockGrid(31, 2)


def test_integrator_selftest():
    assert eisheat.ode_order_selftest("rk4") == pytest.approx(4.0, abs=0.1)
