"""Analytic test surfaces in S^3 and conformal factors on S^3.

The catalog charts are closed-form and isothermal:

* ``clifford``          -- (cos u, sin u, cos v, sin v)/sqrt(2)
* ``flat_torus(r)``     -- (r cos(u/r), r sin(u/r), s cos(v/s), s sin(v/s)),
                           s = sqrt(1 - r^2), arc-length isothermal (E = 1)
* ``mobius_image``      -- a catalog chart pushed through a Lorentz map's
                           Mobius action on S^3 (same parameter domain)

Conformal factors select a representative lambda^2 g0 of the round conformal
class; supported kinds are ``constant(c)`` and ``affine(a, b)`` with
lambda(x) = a + b . x and positivity a > |b|.
"""

from __future__ import annotations

import numpy as np

from .jets import Jet2, trig_jet
from .mink5 import LorentzMap, jet_apply_map

__all__ = ["SurfaceChart", "ConformalFactor", "catalog_surface", "immersion_jet", "lambda_jet"]

J_MAX_DEFAULT = 6


class SurfaceChart:
    """An immersed surface patch with closed-form jets of any order.

    ``periods`` gives the (u1, u2) periods of the torus domain.  Use
    :func:`catalog_surface` to construct one.
    """

    def __init__(self, name: str, params: dict, periods, j_max: int = J_MAX_DEFAULT,
                 base: "SurfaceChart | None" = None, transform: LorentzMap | None = None):
        self.name = name
        self.params = dict(params)
        self.periods = tuple(float(p) for p in periods)
        self.j_max = int(j_max)
        self.base = base
        self.transform = transform

    def jet(self, u1, u2, order: int):
        """Component jets of the immersion at base points (u1, u2).

        Returns a 4-list of Jet2 batched over the shape of u1/u2.
        """
        if order > self.j_max:
            raise ValueError(f"requested jet order {order} exceeds j_max={self.j_max}")
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        if self.name == "clifford":
            amp = 1.0 / np.sqrt(2.0)
            return [
                trig_jet(u1, 0, order, amplitude=amp),
                trig_jet(u1, 0, order, phase=-np.pi / 2.0, amplitude=amp),
                trig_jet(u2, 1, order, amplitude=amp),
                trig_jet(u2, 1, order, phase=-np.pi / 2.0, amplitude=amp),
            ]
        if self.name == "flat_torus":
            r = self.params["r"]
            s = np.sqrt(1.0 - r * r)
            return [
                trig_jet(u1, 0, order, freq=1.0 / r, amplitude=r),
                trig_jet(u1, 0, order, freq=1.0 / r, phase=-np.pi / 2.0, amplitude=r),
                trig_jet(u2, 1, order, freq=1.0 / s, amplitude=s),
                trig_jet(u2, 1, order, freq=1.0 / s, phase=-np.pi / 2.0, amplitude=s),
            ]
        if self.name == "mobius_image":
            xh = self.base.jet(u1, u2, order)
            y = [Jet2.constant(1.0, order, u1.shape)] + xh
            w = jet_apply_map(self.transform, y)
            if np.any(w[0].value <= 0):
                raise ValueError("Mobius image left the forward light cone")
            inv_t = w[0].reciprocal()
            return [w[k] * inv_t for k in range(1, 5)]
        raise ValueError(f"unknown chart '{self.name}'")

    def to_dict(self) -> dict:
        d = {"kind": self.name, "params": dict(self.params)}
        if self.name == "mobius_image":
            d["base"] = self.base.to_dict()
            d["transform"] = self.transform.m.tolist()
        return d


def catalog_surface(name: str, *, r: float | None = None,
                    base: SurfaceChart | None = None,
                    transform: LorentzMap | None = None,
                    j_max: int = J_MAX_DEFAULT) -> SurfaceChart:
    """Construct a catalog chart by name.

    ``flat_torus`` requires 0 < r < 1 (r = 1/sqrt(2) is accepted; it is the
    Clifford torus up to reparametrization).
    """
    if name == "clifford":
        return SurfaceChart("clifford", {}, (2.0 * np.pi, 2.0 * np.pi), j_max)
    if name == "flat_torus":
        if r is None or not (0.0 < r < 1.0):
            raise ValueError("flat_torus requires a radius with 0 < r < 1")
        s = np.sqrt(1.0 - r * r)
        return SurfaceChart("flat_torus", {"r": float(r)},
                            (2.0 * np.pi * r, 2.0 * np.pi * s), j_max)
    if name == "mobius_image":
        if base is None or transform is None:
            raise ValueError("mobius_image requires a base chart and a LorentzMap")
        return SurfaceChart("mobius_image", {}, base.periods, j_max,
                            base=base, transform=transform)
    raise ValueError(f"unknown chart '{name}'")


def immersion_jet(chart: SurfaceChart, point, order: int):
    """4-list of Jet2 for the immersion at a single point or point batch."""
    u1, u2 = point
    return chart.jet(u1, u2, order)


class ConformalFactor:
    """A positive conformal factor on S^3: constant(c) or affine(a, b)."""

    def __init__(self, kind: str, c: float = 1.0, a: float = 1.0, b=None):
        if kind == "constant":
            if c <= 0:
                raise ValueError("constant factor must be positive")
            self.kind, self.c = "constant", float(c)
            self.a, self.b = float(c), np.zeros(4)
        elif kind == "affine":
            b = np.asarray(b, dtype=float)
            if b.shape != (4,):
                raise ValueError("affine factor requires a 4-vector b")
            if a - np.linalg.norm(b) <= 0:
                raise ValueError("affine factor must satisfy a > |b| for positivity on S^3")
            self.kind = "affine"
            self.a, self.b = float(a), b
            self.c = None
        else:
            raise ValueError(f"unknown conformal factor kind '{kind}'")

    @staticmethod
    def constant(c: float) -> "ConformalFactor":
        return ConformalFactor("constant", c=c)

    @staticmethod
    def affine(a: float, b) -> "ConformalFactor":
        return ConformalFactor("affine", a=a, b=b)

    def is_trivial(self) -> bool:
        return self.kind == "constant" and self.c == 1.0

    def hat(self, xjets) -> Jet2:
        """Jet of lambda restricted to the surface (lambda composed with x)."""
        out = xjets[0].scale(self.b[0])
        for k in range(1, 4):
            out = out + xjets[k].scale(self.b[k])
        out.c[..., 0, 0] += self.a
        return out

    def directional(self, vjets) -> Jet2:
        """Jet of the ambient directional derivative b . v along a 4-vector
        field v (lambda is affine, so this is exact)."""
        out = vjets[0].scale(self.b[0])
        for k in range(1, 4):
            out = out + vjets[k].scale(self.b[k])
        return out

    def grad_log_s3(self, xjets, lam_hat: Jet2):
        """4-list of jets of the S^3 gradient of log(lambda):
        (b - (b.x) x) / lambda."""
        bx = self.directional(xjets)
        inv = lam_hat.reciprocal()
        out = []
        for k in range(4):
            g = Jet2.constant(self.b[k], xjets[k].order, xjets[k].batch_shape) - bx * xjets[k]
            out.append(g * inv)
        return out

    def to_dict(self) -> dict:
        if self.kind == "constant":
            return {"kind": "constant", "c": self.c}
        return {"kind": "affine", "a": self.a, "b": self.b.tolist()}


def lambda_jet(factor: ConformalFactor, xjets) -> Jet2:
    """Jet of lambda along the surface (the quantity written lambda-hat)."""
    return factor.hat(xjets)
