import numpy as np
import pytest

from confsurf.surfaces import SurfaceChart, ConformalFactor, catalog_surface
from confsurf.mink5 import make_rotation


def _values(jets):
    return np.stack([j.value for j in jets], axis=-1)


@pytest.mark.parametrize("chart", [
    catalog_surface("clifford"),
    catalog_surface("flat_torus", r=0.6),
])
def test_immersion_on_unit_sphere(chart):
    u = np.linspace(0, chart.periods[0], 7)
    v = np.linspace(0, chart.periods[1], 7)
    x = _values(chart.jet(u, v, 0))
    assert np.allclose(np.sum(x * x, axis=-1), 1.0, atol=1e-12)


def test_periodicity():
    chart = catalog_surface("flat_torus", r=0.6)
    a = _values(chart.jet(np.array([0.1]), np.array([0.2]), 0))
    b = _values(chart.jet(np.array([0.1 + chart.periods[0]]),
                          np.array([0.2 + chart.periods[1]]), 0))
    assert np.allclose(a, b, atol=1e-12)


def test_jet_order_cap():
    chart = catalog_surface("clifford", j_max=4)
    with pytest.raises(ValueError):
        chart.jet(np.array([0.0]), np.array([0.0]), 5)


def test_flat_torus_radius_validation():
    for r in (0.0, 1.0, -0.3, 1.5):
        with pytest.raises(ValueError):
            catalog_surface("flat_torus", r=r)


def test_mobius_image_round_trip():
    base = catalog_surface("clifford")
    L = make_rotation(1, 4, 0.8)
    img = catalog_surface("mobius_image", base=base, transform=L)
    back = catalog_surface("mobius_image", base=img, transform=L.inverse())
    u = np.array([0.3]); v = np.array([1.1])
    assert np.allclose(_values(back.jet(u, v, 0)),
                       _values(base.jet(u, v, 0)), atol=1e-12)


def test_factor_validation():
    with pytest.raises(ValueError):
        ConformalFactor.constant(-1.0)
    with pytest.raises(ValueError):
        ConformalFactor.affine(1.0, [1.0, 0.5, 0, 0])
    fac = ConformalFactor.affine(1.3, [0.2, 0, 0, 0])
    assert fac.kind == "affine" and fac.a == 1.3


def test_chart_serialization_round_trip():
    chart = catalog_surface("flat_torus", r=0.55)
    d = chart.to_dict()
    assert d["kind"] == "flat_torus" and d["params"]["r"] == 0.55
