"""Minkowski 5-spacetime primitives.

Vectors live in R^{1,4} with the bilinear form

    <(t, x), (s, y)> = -t*s + x . y ,

light-cone / hyperboloid membership tests, and the identity component of the
Lorentz group O+(1,4) acting on the 3-sphere by Mobius transformations:
L applied to a null ray (1, p) rescales to mu * (1, phi(p)).

Vectors appear in two flavours throughout the package: plain float arrays of
shape ``(..., 5)`` and 5-lists of :class:`~confsurf.jets.Jet2` components
(for anything that gets differentiated).  Both share the inner product
helpers below.
"""

from __future__ import annotations

import numpy as np

from .jets import Jet2

ETA = np.diag([-1.0, 1.0, 1.0, 1.0, 1.0])

__all__ = [
    "ETA", "lorentz_inner", "classify", "LorentzMap",
    "make_boost", "make_rotation", "mobius_action",
    "jet_inner", "jet_apply_map",
]


def lorentz_inner(u, v):
    """<u, v> = -u0*v0 + u1*v1 + ... + u4*v4 for float 5-vectors (batched)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return -u[..., 0] * v[..., 0] + np.sum(u[..., 1:] * v[..., 1:], axis=-1)


def classify(v, tol: float = 1e-10) -> str:
    """Causal character of a single 5-vector: timelike / null / spacelike.

    The null band is relative: |<v,v>| <= tol * (1 + |v|^2_euclid), since the
    light-cone condition degrades quadratically under rounding.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    v = np.asarray(v, dtype=float)
    q = float(lorentz_inner(v, v))
    if abs(q) <= tol * (1.0 + float(np.dot(v, v))):
        return "null"
    return "timelike" if q < 0 else "spacelike"


class LorentzMap:
    """A matrix in the identity component O+(1,4), validated on construction.

    Requirements: M^T eta M = eta (within 1e-12 per entry), M00 > 0 (time
    orientation) and det M = +1 (orientation).
    """

    __slots__ = ("m",)

    def __init__(self, m):
        m = np.asarray(m, dtype=float)
        if m.shape != (5, 5):
            raise ValueError("LorentzMap requires a 5x5 matrix")
        err = np.max(np.abs(m.T @ ETA @ m - ETA))
        if err > 1e-12:
            raise ValueError(f"matrix does not preserve the Minkowski form (err={err:.2e})")
        if m[0, 0] <= 0:
            raise ValueError("map reverses time orientation")
        if np.linalg.det(m) < 0:
            raise ValueError("map reverses orientation")
        self.m = m

    @staticmethod
    def identity() -> "LorentzMap":
        return LorentzMap(np.eye(5))

    def __matmul__(self, other):
        if isinstance(other, LorentzMap):
            return LorentzMap(self.m @ other.m)
        return self.apply(other)

    def apply(self, v):
        """Apply to a float 5-vector (batched on leading axes)."""
        return np.einsum("ij,...j->...i", self.m, np.asarray(v, dtype=float))

    def inverse(self) -> "LorentzMap":
        return LorentzMap(ETA @ self.m.T @ ETA)


def make_boost(direction, rapidity: float) -> LorentzMap:
    """Boost along a unit spatial 4-vector with the given rapidity."""
    d = np.asarray(direction, dtype=float)
    if d.shape != (4,) or abs(np.dot(d, d) - 1.0) > 1e-12:
        raise ValueError("boost direction must be a unit 4-vector")
    m = np.eye(5)
    m[0, 0] = np.cosh(rapidity)
    m[0, 1:] = np.sinh(rapidity) * d
    m[1:, 0] = np.sinh(rapidity) * d
    m[1:, 1:] = np.eye(4) + (np.cosh(rapidity) - 1.0) * np.outer(d, d)
    return LorentzMap(m)


def make_rotation(i: int, j: int, angle: float) -> LorentzMap:
    """Rotation in the spatial (e_i, e_j) plane, 1 <= i < j <= 4."""
    if not (1 <= i < j <= 4):
        raise ValueError("rotation axes must satisfy 1 <= i < j <= 4")
    m = np.eye(5)
    c, s = np.cos(angle), np.sin(angle)
    m[i, i] = c
    m[j, j] = c
    m[i, j] = -s
    m[j, i] = s
    return LorentzMap(m)


def mobius_action(L: LorentzMap, p):
    """Mobius action of L on a point of S^3.

    Returns (image, mu) with L (1, p) = mu * (1, image), mu > 0.
    """
    p = np.asarray(p, dtype=float)
    y = np.concatenate([np.ones(p.shape[:-1] + (1,)), p], axis=-1)
    w = L.apply(y)
    mu = w[..., 0]
    if np.any(mu <= 0):
        raise ValueError("image left the forward light cone; corrupted Lorentz map")
    return w[..., 1:] / mu[..., None], mu


# -- jet-valued 5-vectors --------------------------------------------------

def jet_inner(u, v) -> Jet2:
    """Minkowski inner product of two 5-lists of Jet2."""
    out = -(u[0] * v[0])
    for k in range(1, 5):
        out = out + u[k] * v[k]
    return out


def jet_apply_map(L: LorentzMap, v):
    """Apply a LorentzMap to a 5-list of Jet2 components."""
    out = []
    for i in range(5):
        acc = v[0].scale(L.m[i, 0])
        for j in range(1, 5):
            acc = acc + v[j].scale(L.m[i, j])
        out.append(acc)
    return out
