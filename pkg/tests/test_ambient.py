import math

import numpy as np
import pytest

from confsurf.ambient import (
    ambient_forms, ambient_jets, htilde_jets, appendix_inverse_jets,
    ruled_surface_forms, surface_invariants, invariant_suite,
    direct_invariants, double_laplace_direct, degeneracy_roots,
)
from confsurf.errors import DegenerateAmbientError
from confsurf.frame import conformal_frame
from confsurf.surfaces import catalog_surface, ConformalFactor


def _fs(name="flat_torus", affine=False, order=4, seed=11):
    chart = (catalog_surface("clifford", j_max=8) if name == "clifford"
             else catalog_surface("flat_torus", r=0.6, j_max=8))
    factor = (ConformalFactor.affine(1.3, [0.2, 0.0, 0.0, 0.0]) if affine
              else ConformalFactor.constant(1.0))
    rng = np.random.default_rng(seed)
    pt = (float(rng.uniform(0, chart.periods[0])),
          float(rng.uniform(0, chart.periods[1])))
    return conformal_frame(chart, factor, pt, order)


def test_known_invariant_values():
    fs = _fs("clifford")
    si = surface_invariants(fs)
    assert abs(si["normII2"] - 2.0) < 1e-12
    assert abs(si["willmore"]) < 1e-12
    assert abs(si["grad_form"] - 6.0) < 1e-10

    fs = _fs("flat_torus")
    si = surface_invariants(fs)
    r, s = 0.6, math.sqrt(1 - 0.36)
    assert abs(si["willmore"] - (s * s - r * r) / (4 * r ** 3 * s ** 3)) < 1e-12


def test_surface_forms_match_generic_oracle():
    # closed-form order-4/5 scalars against the generic tensor route
    for name in ("clifford", "flat_torus"):
        for affine in (False, True):
            fs = _fs(name, affine)
            alpha = 1.7
            si = surface_invariants(fs)
            di = direct_invariants(fs, alpha)
            assert abs(si["grad_form"] / alpha ** 4 - di["grad_h_sq"]) \
                < 1e-8 * max(1.0, abs(di["grad_h_sq"]))
            d5 = double_laplace_direct(fs, alpha)
            assert abs(8.0 * si["dlap_willmore"] / alpha ** 5 - d5) \
                < 1e-7 * max(1.0, abs(d5))


def test_ambient_metric_signature_and_normal():
    fs = _fs("flat_torus")
    forms = ambient_forms(fs, 1.0, 0.05)
    eig = np.linalg.eigvalsh(forms.G)
    assert (eig < 0).sum() == 1 and (eig > 0).sum() == 3
    data = ambient_jets(fs, 1.0, 0.05, 1)
    assert max(abs(n.value) for n in data["normal_defect"]) < 1e-12


def test_block_inverse_agrees_with_adjugate():
    fs = _fs("flat_torus", affine=True)
    data = ambient_jets(fs, 1.2, 0.03, 1)
    Gi, sdet = appendix_inverse_jets(fs, 1.2, 0.03, 1)
    worst = max(np.max(np.abs((Gi[a][b] - data["Ginv"][a][b]).c))
                for a in range(4) for b in range(4))
    assert worst < 1e-10
    assert abs(sdet.value - data["sqrt_det"].value) < 1e-10


def test_htilde_closed_form():
    fs = _fs("flat_torus")
    direct = ambient_jets(fs, 1.0, 0.1, 1)["Htilde"].value
    closed = htilde_jets(fs, 1.0, 0.1, 1).value
    assert abs(direct - closed) < 1e-10 * abs(closed)


def test_degeneracy_detection():
    fs = _fs("flat_torus")
    roots = degeneracy_roots(fs)
    rho = min(float(np.real(r)) for r in np.atleast_1d(roots)
              if abs(np.imag(r)) < 1e-12 and np.real(r) > 0)
    with pytest.raises(DegenerateAmbientError):
        ambient_jets(fs, 1.0, rho, 1)


def test_ruled_surface_closed_form():
    fs = _fs("flat_torus")
    for t in (-0.4, 0.0, 0.4):
        rf = ruled_surface_forms(fs, t)
        assert abs(rf.Hplus - rf.Hplus_closed) < 1e-9
        assert abs(rf.position_norm + 1.0) < 1e-12


def test_invariant_suite_alpha_scaling():
    fs = _fs("flat_torus", affine=True)
    base = {r.name: (r.value, r.order) for r in invariant_suite(fs, 1.0)}
    for r in invariant_suite(fs, 2.0):
        want = base[r.name][0] * 2.0 ** (-r.order)
        assert abs(r.value - want) <= 1e-12 * max(1.0, abs(want))
