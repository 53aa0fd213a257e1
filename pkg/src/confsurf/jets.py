"""Truncated bivariate Taylor expansions (jets) used as the derivative engine.

A ``Jet2`` stores the Taylor coefficients of a smooth function of two
parameters (u1, u2) around a base point, truncated at a total order J::

    f(u1 + s, u2 + t)  =  sum_{a+b <= J}  c[a, b] * s^a * t^b  +  O(J+1)

Coefficients are kept in an ndarray of shape ``batch_shape + (J+1, J+1)``
with entries above the anti-diagonal (a + b > J) identically zero, so a
single ``Jet2`` can carry the expansions at a whole grid of base points at
once.  All arithmetic broadcasts over the leading batch axes.

Partial derivatives are exact coefficient shifts (the resulting jet is valid
to one order less), so no finite differencing is involved anywhere in the
chain from an immersion to its curvature data.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["Jet2", "jet_constant", "jet_variable", "trig_jet"]


@lru_cache(maxsize=None)
def _conv_indices(order: int):
    """Index quadruples (a1, b1, a2, b2) with a1+b1+a2+b2 <= order."""
    idx = []
    for a1 in range(order + 1):
        for b1 in range(order + 1 - a1):
            for a2 in range(order + 1 - a1 - b1):
                for b2 in range(order + 1 - a1 - b1 - a2):
                    idx.append((a1, b1, a2, b2))
    return idx


class Jet2:
    """Truncated Taylor expansion in two variables with batched coefficients."""

    __slots__ = ("c", "order")

    def __init__(self, c: np.ndarray, order: int):
        c = np.asarray(c, dtype=float)
        if c.shape[-2:] != (order + 1, order + 1):
            raise ValueError("coefficient array shape does not match order")
        self.c = c
        self.order = order

    # -- construction -------------------------------------------------

    @staticmethod
    def constant(value, order: int, batch_shape=()) -> "Jet2":
        value = np.asarray(value, dtype=float)
        shape = np.broadcast_shapes(value.shape, batch_shape)
        c = np.zeros(shape + (order + 1, order + 1))
        c[..., 0, 0] = value
        return Jet2(c, order)

    @staticmethod
    def variable(value, axis: int, order: int, batch_shape=()) -> "Jet2":
        """Jet of the coordinate function u1 (axis=0) or u2 (axis=1)."""
        j = Jet2.constant(value, order, batch_shape)
        if order >= 1:
            if axis == 0:
                j.c[..., 1, 0] = 1.0
            elif axis == 1:
                j.c[..., 0, 1] = 1.0
            else:
                raise ValueError("axis must be 0 or 1")
        return j

    # -- basic queries ------------------------------------------------

    @property
    def value(self) -> np.ndarray:
        return self.c[..., 0, 0]

    @property
    def batch_shape(self):
        return self.c.shape[:-2]

    def coeff(self, a: int, b: int) -> np.ndarray:
        return self.c[..., a, b]

    def truncated(self, order: int) -> "Jet2":
        if order > self.order:
            raise ValueError("cannot raise the order of a jet")
        if order == self.order:
            return self
        k = order + 1
        c = self.c[..., :k, :k].copy()
        for a in range(k):
            c[..., a, k - a:] = 0.0
        return Jet2(c, order)

    def __repr__(self):
        return f"Jet2(order={self.order}, batch={self.batch_shape}, value={self.value!r})"

    # -- linear arithmetic -------------------------------------------

    def _coerce(self, other, order):
        if isinstance(other, Jet2):
            return other.truncated(order)
        return Jet2.constant(other, order)

    def __add__(self, other):
        order = min(self.order, other.order) if isinstance(other, Jet2) else self.order
        a, b = self.truncated(order), self._coerce(other, order)
        return Jet2(a.c + b.c, order)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.c, self.order)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet2) else -np.asarray(other, dtype=float))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "Jet2":
        """Multiply by a plain scalar or batch array (no jet dependence)."""
        s = np.asarray(s, dtype=float)
        return Jet2(self.c * s[..., None, None], self.order)

    # -- multiplicative arithmetic -----------------------------------

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            return self.scale(other)
        order = min(self.order, other.order)
        x, y = self.truncated(order).c, other.truncated(order).c
        shape = np.broadcast_shapes(x.shape[:-2], y.shape[:-2])
        out = np.zeros(shape + (order + 1, order + 1))
        for a1, b1, a2, b2 in _conv_indices(order):
            out[..., a1 + a2, b1 + b2] += x[..., a1, b1] * y[..., a2, b2]
        return Jet2(out, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other.reciprocal()
        return self.scale(1.0 / np.asarray(other, dtype=float))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def compose_univariate(self, outer_coeffs) -> "Jet2":
        """Evaluate g(f) where ``outer_coeffs[k]`` is the k-th Taylor
        coefficient of g at the base value of f (k = 0 .. order)."""
        order = self.order
        dx = Jet2(self.c.copy(), order)
        dx.c[..., 0, 0] = 0.0
        out = Jet2.constant(np.broadcast_to(outer_coeffs[order], self.value.shape), order)
        for k in range(order - 1, -1, -1):
            out = out * dx
            out.c[..., 0, 0] += np.broadcast_to(outer_coeffs[k], self.value.shape)
        return out

    def reciprocal(self) -> "Jet2":
        f0 = self.value
        if np.any(f0 == 0.0):
            raise ZeroDivisionError("jet reciprocal at a zero base value")
        coeffs = [(-1.0) ** k / f0 ** (k + 1) for k in range(self.order + 1)]
        return self.compose_univariate(coeffs)

    def sqrt(self) -> "Jet2":
        f0 = self.value
        if np.any(f0 <= 0.0):
            raise ValueError("jet sqrt requires a positive base value")
        coeffs, a = [], np.sqrt(f0)
        for k in range(self.order + 1):
            coeffs.append(a)
            a = a * (0.5 - k) / ((k + 1) * f0)
        return self.compose_univariate(coeffs)

    def log(self) -> "Jet2":
        f0 = self.value
        if np.any(f0 <= 0.0):
            raise ValueError("jet log requires a positive base value")
        coeffs = [np.log(f0)]
        coeffs += [(-1.0) ** (k + 1) / (k * f0 ** k) for k in range(1, self.order + 1)]
        return self.compose_univariate(coeffs)

    def power(self, p: float) -> "Jet2":
        f0 = self.value
        coeffs, a = [], f0 ** p
        for k in range(self.order + 1):
            coeffs.append(a)
            a = a * (p - k) / ((k + 1) * f0)
        return self.compose_univariate(coeffs)

    # -- calculus -----------------------------------------------------

    def deriv(self, axis: int) -> "Jet2":
        """Partial derivative; the result is valid to one order less."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        k = self.order  # new order + 1
        if axis == 0:
            c = self.c[..., 1:, :k] * np.arange(1, k + 1)[:, None]
        elif axis == 1:
            c = self.c[..., :k, 1:] * np.arange(1, k + 1)[None, :]
        else:
            raise ValueError("axis must be 0 or 1")
        j = Jet2(np.ascontiguousarray(c), k - 1)
        # re-zero the now-invalid anti-diagonal
        for a in range(k):
            j.c[..., a, k - a:] = 0.0
        return j


def jet_constant(value, order: int, batch_shape=()) -> Jet2:
    return Jet2.constant(value, order, batch_shape)


def jet_variable(value, axis: int, order: int, batch_shape=()) -> Jet2:
    return Jet2.variable(value, axis, order, batch_shape)


def trig_jet(u0, axis: int, order: int, freq: float = 1.0, phase: float = 0.0,
             amplitude: float = 1.0) -> Jet2:
    """Exact jet of ``amplitude * cos(freq*u + phase)`` along one axis.

    Used by the closed-form surface charts: every coefficient comes from the
    rotation identity cos^(k)(t) = cos(t + k*pi/2), so the jets carry no
    truncation error at any order.
    """
    u0 = np.asarray(u0, dtype=float)
    c = np.zeros(u0.shape + (order + 1, order + 1))
    fact = 1.0
    for k in range(order + 1):
        if k > 0:
            fact *= k
        val = amplitude * freq ** k * np.cos(freq * u0 + phase + k * np.pi / 2.0) / fact
        if axis == 0:
            c[..., k, 0] = val
        else:
            c[..., 0, k] = val
    return Jet2(c, order)
