import numpy as np
import pytest

from confsurf.errors import UmbilicPointError
from confsurf.frame import conformal_frame, omega_star_closed_form
from confsurf.mink5 import ETA
from confsurf.reconstruction import GRAM_TARGET
from confsurf.surfaces import catalog_surface, ConformalFactor


def _fs(chart_name="flat_torus", affine=True, order=1, n=4, seed=3, r=0.6):
    chart = (catalog_surface("clifford") if chart_name == "clifford"
             else catalog_surface("flat_torus", r=r))
    factor = (ConformalFactor.affine(1.3, [0.2, 0.05, -0.1, 0.04]) if affine
              else ConformalFactor.constant(1.0))
    rng = np.random.default_rng(seed)
    pts = (rng.uniform(0, chart.periods[0], n),
           rng.uniform(0, chart.periods[1], n))
    return conformal_frame(chart, factor, pts, order)


def test_frame_gram_matrix():
    fs = _fs()
    inv_sqrt_m = fs.m.power(-0.5)
    rows = [fs.y_l, fs.y_star,
            [c.deriv(0) * inv_sqrt_m for c in fs.xi],
            [c.deriv(1) * inv_sqrt_m for c in fs.xi],
            fs.xi]
    vals = np.stack([np.stack([c.value for c in r], -1) for r in rows], -2)
    gram = np.einsum("...ik,kl,...jl->...ij", vals, ETA, vals)
    assert np.max(np.abs(gram - GRAM_TARGET)) < 1e-10


def test_congruence_normal_to_both_lifts():
    fs = _fs(affine=False)
    for vec in (fs.y_l, fs.y_star):
        ip = sum(a.value * b.value * s for a, b, s in
                 zip(fs.xi, vec, [-1, 1, 1, 1, 1]))
        assert np.max(np.abs(ip)) < 1e-12


def test_second_form_closed_form_matches_definition():
    fs = _fs(order=1)
    closed = omega_star_closed_form(fs)
    for i in range(2):
        for j in range(2):
            dev = np.max(np.abs((closed[i][j] - fs.OmegaStar[i][j]).c))
            assert dev < 1e-10


def test_omega_trace_free():
    fs = _fs()
    tr = fs.Omega[0][0].value + fs.Omega[1][1].value
    assert np.max(np.abs(tr)) < 1e-12


def test_willmore_surface_has_vanishing_operator():
    fs = _fs("clifford", affine=False)
    assert np.max(np.abs(fs.scriptH.value)) < 1e-12


def test_mobius_metric_invariant_under_factor():
    # m is a Mobius-invariant density: identical for constant and affine
    # scale factors at the same points
    chart = catalog_surface("flat_torus", r=0.6)
    rng = np.random.default_rng(5)
    pts = (rng.uniform(0, chart.periods[0], 5),
           rng.uniform(0, chart.periods[1], 5))
    a = conformal_frame(chart, ConformalFactor.constant(1.0), pts, 0)
    b = conformal_frame(chart, ConformalFactor.affine(
        1.3, [0.2, 0.05, -0.1, 0.04]), pts, 0)
    assert np.allclose(a.m.value, b.m.value, atol=1e-10)
