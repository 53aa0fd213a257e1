import numpy as np
import pytest

from confsurf.mink5 import (
    ETA, LorentzMap, lorentz_inner, classify, make_boost, make_rotation,
    mobius_action,
)


def test_inner_product_signature():
    assert lorentz_inner([1, 0, 0, 0, 0], [1, 0, 0, 0, 0]) == -1.0
    assert lorentz_inner([0, 1, 0, 0, 0], [0, 1, 0, 0, 0]) == 1.0


def test_classify():
    assert classify([1, 0, 0, 0, 0]) == "timelike"
    assert classify([1, 1, 0, 0, 0]) == "null"
    assert classify([0, 1, 0, 0, 0]) == "spacelike"


def test_boost_and_rotation_preserve_eta():
    d = np.array([0.6, 0.8, 0.0, 0.0])
    for L in (make_boost(d, 0.7), make_rotation(1, 3, 0.4),
              make_boost(d, 0.7) @ make_rotation(2, 4, 1.1)):
        assert np.allclose(L.m.T @ ETA @ L.m, ETA, atol=1e-12)
        assert np.allclose((L @ L.inverse()).m, np.eye(5), atol=1e-12)


def test_boost_requires_unit_direction():
    with pytest.raises(ValueError):
        make_boost([1.0, 1.0, 0.0, 0.0], 0.5)


def test_non_lorentz_matrix_rejected():
    with pytest.raises(ValueError):
        LorentzMap(np.diag([2.0, 1, 1, 1, 1]))


def test_mobius_action_stays_on_sphere():
    rng = np.random.default_rng(0)
    x = rng.normal(size=4)
    x /= np.linalg.norm(x)
    L = make_boost(np.eye(4)[0], 0.9)
    y, mu = mobius_action(L, x)
    assert mu > 0
    assert abs(np.linalg.norm(y) - 1.0) < 1e-12
    back, _ = mobius_action(L.inverse(), y)
    assert np.allclose(back, x, atol=1e-12)
