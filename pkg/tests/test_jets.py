import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from confsurf.jets import Jet2, jet_variable, trig_jet

finite = st.floats(min_value=-3.0, max_value=3.0,
                   allow_nan=False, allow_infinity=False)
nonzero = st.floats(min_value=0.2, max_value=3.0).map(
    lambda x: x if x > 0.5 else x + 0.5)


def poly(u, v, order=4):
    x = jet_variable(u, 0, order)
    y = jet_variable(v, 1, order)
    return x * x * y + y * y * 0.5 - x * 3.0 + 1.0


@settings(max_examples=30, deadline=None)
@given(finite, finite)
def test_product_rule(u, v):
    f = poly(u, v)
    g = poly(v, u) + 2.0
    lhs = (f * g).deriv(0)
    rhs = f.deriv(0) * g + f * g.deriv(0)
    assert np.allclose(lhs.c, rhs.c, atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(finite, finite)
def test_mixed_partials_commute(u, v):
    f = poly(u, v)
    assert np.allclose(f.deriv(0).deriv(1).c, f.deriv(1).deriv(0).c)


@settings(max_examples=30, deadline=None)
@given(nonzero, finite)
def test_reciprocal_and_sqrt(u, v):
    f = poly(u, v) * 0.1 + 4.0
    one = f * f.reciprocal()
    assert abs(one.value - 1.0) < 1e-12
    assert np.allclose((one.c - Jet2.constant(1.0, f.order).c), 0.0,
                       atol=1e-10)
    s = f.sqrt()
    assert np.allclose((s * s).c, f.c, atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(nonzero)
def test_log_inverts_power(u):
    f = jet_variable(u, 0, 4) + 4.0
    assert np.allclose((f.power(2.0).log().c), (f.log() * 2.0).c, atol=1e-9)


def test_trig_jet_derivative_cycle():
    j = trig_jet(np.array([0.3]), 0, 5, freq=2.0, amplitude=1.5)
    d2 = j.deriv(0).deriv(0)
    assert np.allclose(d2.c, -4.0 * j.truncated(3).c, atol=1e-12)


def test_taylor_coefficients_match_values():
    f = poly(0.7, -0.4)
    # d^2/du^2 of x^2 y at (0.7, -0.4) is 2y = -0.8
    assert abs(f.coeff(2, 0) * 2.0 - (-0.8)) < 1e-12


def test_shape_validation():
    with pytest.raises(ValueError):
        Jet2(np.zeros((3, 4)), 3)
