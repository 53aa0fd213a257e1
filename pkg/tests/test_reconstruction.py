import numpy as np
import pytest

from confsurf.errors import ConfigError, IntegrabilityError
from confsurf.mink5 import make_boost
from confsurf.reconstruction import (
    ConformalData, GridSpec, integrability_residuals, seed_from_frame,
    standard_seed, transform_seed, integrate_structure_equations,
    path_independence, extract_surface, surface_invariant_fields,
    chart_surface_field, compare_modulo_mobius, GRAM_TARGET,
)
from confsurf.surfaces import catalog_surface, ConformalFactor

N = 16


@pytest.fixture(scope="module")
def clifford_data():
    chart = catalog_surface("clifford")
    return ConformalData.from_chart(chart, ConformalFactor.constant(1.0),
                                    n1=N, n2=N)


def test_chart_data_satisfies_integrability(clifford_data):
    rep = integrability_residuals(clifford_data)
    assert rep.max_residual < 1e-9


def test_serialization_round_trip(clifford_data):
    text = clifford_data.to_json()
    back = ConformalData.from_json(text)
    assert back.source == "tabulated"
    for k, v in clifford_data.tables.items():
        assert np.allclose(back.tables[k], v, atol=0)
    # tabulated data still passes integrability within the spectral floor
    assert integrability_residuals(back).max_residual < 1e-6


def test_round_trip_small_grid(clifford_data):
    seed = seed_from_frame(clifford_data, (0, 0))
    ff = integrate_structure_equations(clifford_data, seed, method="magnus")
    assert ff.gram_drift < 1e-10
    assert path_independence(clifford_data, seed, method="magnus") < 1e-10
    sf = extract_surface(ff)
    chart = catalog_surface("clifford")
    ref = chart_surface_field(chart, ConformalFactor.constant(1.0),
                              clifford_data.grid)
    cmp = compare_modulo_mobius(sf, ref)
    assert cmp.max_deviation < 1e-9
    # positions themselves agree because the seed was the chart frame
    assert np.max(np.abs(sf.x_hat - ref.x_hat)) < 1e-9


def test_transformed_seed_same_invariants(clifford_data):
    seed = seed_from_frame(clifford_data, (0, 0))
    L = make_boost(np.eye(4)[1], 0.6)
    a = surface_invariant_fields(extract_surface(
        integrate_structure_equations(clifford_data, seed, method="magnus")))
    b = surface_invariant_fields(extract_surface(
        integrate_structure_equations(clifford_data,
                                      transform_seed(seed, L),
                                      method="magnus")))
    for k in a:
        assert np.max(np.abs(a[k] - b[k])) < 1e-10


def test_perturbed_data_fails_integrability(clifford_data):
    pert = clifford_data.perturbed("OmegaStar", 1e-2, (0, 1))
    with pytest.raises(IntegrabilityError):
        integrate_structure_equations(pert, standard_seed())


def test_bad_seed_rejected(clifford_data):
    with pytest.raises(ConfigError):
        integrate_structure_equations(clifford_data, np.eye(5) * 2.0)


def test_grid_validation():
    with pytest.raises(ConfigError):
        GridSpec.for_periods(4, 16, (1.0, 1.0))


def test_rk4_converges_at_least_fourth_order(clifford_data):
    # halving the step through a finer grid should cut the Gram drift by
    # at least 2^4 (the single step is classic fourth order)
    chart = catalog_surface("clifford")
    fac = ConformalFactor.constant(1.0)
    drifts = []
    for n in (16, 32):
        data = ConformalData.from_chart(chart, fac, n1=n, n2=n)
        seed = seed_from_frame(data, (0, 0))
        ff = integrate_structure_equations(data, seed, method="rk4",
                                           drift_limit=np.inf)
        drifts.append(ff.gram_drift)
    ratio = drifts[0] / drifts[1]
    assert 12.0 < ratio < 64.0
