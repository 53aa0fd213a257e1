import numpy as np
import pytest

from confsurf.classical import (
    classical_geometry, lambda_geometry, codazzi_residual_classical,
    isothermal_christoffels,
)
from confsurf.surfaces import catalog_surface, ConformalFactor


def _pts(chart, n=5, seed=0):
    rng = np.random.default_rng(seed)
    return (rng.uniform(0, chart.periods[0], n),
            rng.uniform(0, chart.periods[1], n))


def test_flat_torus_first_second_form():
    r = 0.6
    s = np.sqrt(1 - r * r)
    chart = catalog_surface("flat_torus", r=r)
    cj = classical_geometry(chart, _pts(chart), 1)
    # isothermal flat metric, H = (s^2 - r^2)/(2 r s), K = 0
    assert np.allclose(cj.E.value, 1.0, atol=1e-12)
    assert np.allclose(cj.H.value, (s * s - r * r) / (2 * r * s), atol=1e-12)
    assert np.allclose(cj.K.value, 0.0, atol=1e-12)


def test_clifford_is_minimal():
    chart = catalog_surface("clifford")
    cj = classical_geometry(chart, _pts(chart), 1)
    assert np.allclose(cj.H.value, 0.0, atol=1e-12)
    assert np.allclose(cj.norm_IIo_sq.value, 2.0, atol=1e-12)


def test_round_metric_curvature_values():
    # lambda == 1: the ambient 3-sphere has Ric = 2g and Ric_3i = 0
    chart = catalog_surface("flat_torus", r=0.6)
    lj = lambda_geometry(chart, ConformalFactor.constant(1.0), _pts(chart), 1)
    curv = lj.curv
    assert np.allclose(curv.Ric_33.value, 2.0, atol=1e-10)
    assert np.allclose(curv.Ric_3i[0].value, 0.0, atol=1e-10)
    assert np.allclose(curv.Ric_3i[1].value, 0.0, atol=1e-10)
    assert np.allclose(curv.K_T.value, 1.0, atol=1e-10)


def test_codazzi_residual_vanishes_affine():
    chart = catalog_surface("flat_torus", r=0.6)
    fac = ConformalFactor.affine(1.3, [0.2, 0.05, -0.1, 0.04])
    lj = lambda_geometry(chart, fac, _pts(chart), 1)
    res = codazzi_residual_classical(lj)
    worst = max(float(np.max(np.abs(r.value))) for r in np.ravel(res))
    assert worst < 1e-10


def test_isothermal_christoffel_trace_property():
    chart = catalog_surface("flat_torus", r=0.6)
    fac = ConformalFactor.affine(1.3, [0.2, 0.05, -0.1, 0.04])
    lj = lambda_geometry(chart, fac, _pts(chart), 1)
    gam = isothermal_christoffels(lj.E)
    for k in range(2):
        tr = sum(gam[k][i][i].value for i in range(2))
        assert np.allclose(tr, 0.0, atol=1e-12)
