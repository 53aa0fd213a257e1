"""Geometry of the associate cone 4-surface in Minkowski 5-space.

From the frame data of an umbilic-free surface this module builds the
homogeneous 4-surface

    xt(alpha, rho, u1, u2) = alpha * (y_l + rho * y_star)

swept out by the null rays of y_l and y_star, together with the ruled
3-surface x_plus = (e^t y_l + e^{-t} y_star)/sqrt(2) inside the unit
hyperboloid.  The conformal Gauss map xi is the unit normal of both.

Two independent computation routes are kept side by side throughout:

* closed-form assembly of the first/second fundamental forms, their block
  inverse, det I, the mean curvature and the scalar invariants, written
  only in surface data (m, omega, Omega, Omega_star, scriptH);
* a direct route through four-variable jets (Jet4) of xt and xi, where
  metric, normal, Christoffel symbols, covariant derivatives and the
  Laplace-Beltrami operator are produced by generic tensor calculus.

The direct route is the oracle: every closed form is validated against it
in the check suites.  Scalar invariants are evaluated on the light-cone
locus rho = 0 using the closed-form limits (never small-rho extrapolation).

Contraction conventions (the displays mix two norms): |Omega|^2, tr(Omega
Omega_star), det Omega and det Omega_star always mean raw coordinate-entry
sums/determinants; metric contractions carry explicit E_l factors at the
use site (e.g. |IIo|^2 = |Omega|^2 / E_l^2, m = |Omega|^2 / (2 E_l)).
"""

from __future__ import annotations

import inspect
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _invariant_forms
from .classical import isothermal_christoffels
from .errors import DegenerateAmbientError
from .frame import FrameState
from .jets import Jet2

__all__ = [
    "Jet4", "promote", "AmbientPoint", "AmbientForms", "RuledForms",
    "InvariantRecord", "CovariantData", "ambient_metric",
    "ambient_metric_inverse", "ambient_second_form", "ambient_forms",
    "ambient_jets", "htilde_jets", "appendix_inverse_jets",
    "laplace_beltrami", "ruled_surface_forms", "christoffels_and_covariant_h",
    "surface_invariants", "invariant_suite", "direct_invariants",
    "double_laplace_direct", "conformal_invariance_check",
    "degeneracy_roots", "INVARIANT_ORDERS",
]

DEGENERACY_FLOOR = 1e-12


@lru_cache(maxsize=None)
def _degree_mask(order: int) -> np.ndarray:
    idx = np.indices((order + 1,) * 4).sum(axis=0)
    return (idx <= order).astype(float)


class Jet4:
    """Truncated Taylor expansion in the four coordinates (alpha, rho, u1, u2).

    Unbatched scalar coefficients; total degree <= order.  Mirrors the Jet2
    arithmetic so the two jet engines can cross-check each other.
    """

    __slots__ = ("c", "order")

    def __init__(self, c: np.ndarray, order: int):
        c = np.asarray(c, dtype=float)
        if c.shape != (order + 1,) * 4:
            raise ValueError("coefficient array shape does not match order")
        self.c = c
        self.order = order

    # -- construction -------------------------------------------------

    @staticmethod
    def constant(value: float, order: int) -> "Jet4":
        c = np.zeros((order + 1,) * 4)
        c[0, 0, 0, 0] = float(value)
        return Jet4(c, order)

    @staticmethod
    def variable(value: float, axis: int, order: int) -> "Jet4":
        j = Jet4.constant(value, order)
        if order >= 1:
            idx = [0, 0, 0, 0]
            idx[axis] = 1
            j.c[tuple(idx)] = 1.0
        return j

    # -- basic queries ------------------------------------------------

    @property
    def value(self) -> float:
        return float(self.c[0, 0, 0, 0])

    def coeff(self, a: int, b: int, c: int, d: int) -> float:
        return float(self.c[a, b, c, d])

    def truncated(self, order: int) -> "Jet4":
        if order > self.order:
            raise ValueError("cannot raise the order of a jet")
        if order == self.order:
            return self
        k = order + 1
        c = self.c[:k, :k, :k, :k] * _degree_mask(order)
        return Jet4(c, order)

    def __repr__(self):
        return f"Jet4(order={self.order}, value={self.value!r})"

    # -- linear arithmetic -------------------------------------------

    def _coerce(self, other, order):
        if isinstance(other, Jet4):
            return other.truncated(order)
        return Jet4.constant(other, order)

    def __add__(self, other):
        order = min(self.order, other.order) if isinstance(other, Jet4) else self.order
        a, b = self.truncated(order), self._coerce(other, order)
        return Jet4(a.c + b.c, order)

    __radd__ = __add__

    def __neg__(self):
        return Jet4(-self.c, self.order)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet4) else -float(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: float) -> "Jet4":
        return Jet4(self.c * float(s), self.order)

    # -- multiplicative arithmetic -----------------------------------

    def __mul__(self, other):
        if not isinstance(other, Jet4):
            return self.scale(other)
        order = min(self.order, other.order)
        x = self.truncated(order).c
        y = other.truncated(order).c
        n = order + 1
        out = np.zeros((n,) * 4)
        for a, b, c, d in zip(*np.nonzero(x)):
            if a + b + c + d > order:
                continue
            out[a:, b:, c:, d:] += x[a, b, c, d] * y[:n - a, :n - b, :n - c, :n - d]
        return Jet4(out * _degree_mask(order), order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet4):
            return self * other.reciprocal()
        return self.scale(1.0 / float(other))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def compose_univariate(self, outer_coeffs) -> "Jet4":
        """Evaluate g(f) where ``outer_coeffs[k]`` is the k-th Taylor
        coefficient of g at the base value of f."""
        order = self.order
        dx = Jet4(self.c.copy(), order)
        dx.c[0, 0, 0, 0] = 0.0
        out = Jet4.constant(outer_coeffs[order], order)
        for k in range(order - 1, -1, -1):
            out = out * dx
            out.c[0, 0, 0, 0] += outer_coeffs[k]
        return out

    def reciprocal(self) -> "Jet4":
        f0 = self.value
        if f0 == 0.0:
            raise ZeroDivisionError("jet reciprocal at a zero base value")
        coeffs = [(-1.0) ** k / f0 ** (k + 1) for k in range(self.order + 1)]
        return self.compose_univariate(coeffs)

    def sqrt(self) -> "Jet4":
        f0 = self.value
        if f0 <= 0.0:
            raise ValueError("jet sqrt requires a positive base value")
        coeffs, a = [], math.sqrt(f0)
        for k in range(self.order + 1):
            coeffs.append(a)
            a = a * (0.5 - k) / ((k + 1) * f0)
        return self.compose_univariate(coeffs)

    def exp(self) -> "Jet4":
        a = math.exp(self.value)
        coeffs = []
        for k in range(self.order + 1):
            coeffs.append(a)
            a = a / (k + 1)
        return self.compose_univariate(coeffs)

    def power(self, p: float) -> "Jet4":
        f0 = self.value
        coeffs, a = [], f0 ** p
        for k in range(self.order + 1):
            coeffs.append(a)
            a = a * (p - k) / ((k + 1) * f0)
        return self.compose_univariate(coeffs)

    # -- calculus -----------------------------------------------------

    def deriv(self, axis: int) -> "Jet4":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        k = self.order
        sl = [slice(0, k)] * 4
        sl[axis] = slice(1, k + 1)
        shape = [1, 1, 1, 1]
        shape[axis] = k
        c = self.c[tuple(sl)] * np.arange(1, k + 1).reshape(shape)
        return Jet4(np.ascontiguousarray(c) * _degree_mask(k - 1), k - 1)


def promote(j2: Jet2, order: int) -> Jet4:
    """Embed an unbatched two-variable jet in (u1, u2) as a four-variable
    jet constant in (alpha, rho)."""
    if j2.batch_shape != ():
        raise ValueError("promotion requires an unbatched jet")
    out = np.zeros((order + 1,) * 4)
    k = min(j2.order, order)
    out[0, 0, :k + 1, :k + 1] = j2.c[:k + 1, :k + 1]
    return Jet4(out * _degree_mask(order), order)


# -- small linear algebra over jets ----------------------------------

def _minor(M, i, j):
    return [[M[a][b] for b in range(len(M)) if b != j]
            for a in range(len(M)) if a != i]


def _det2(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def _det3(M):
    return (M[0][0] * _det2(_minor(M, 0, 0))
            - M[0][1] * _det2(_minor(M, 0, 1))
            + M[0][2] * _det2(_minor(M, 0, 2)))


def _det4(M):
    out = None
    for j in range(4):
        term = M[0][j] * _det3(_minor(M, 0, j))
        if j % 2 == 1:
            term = -term
        out = term if out is None else out + term
    return out


def _inverse4(M, det=None):
    """Adjugate inverse of a 4x4 matrix of jets (or floats)."""
    if det is None:
        det = _det4(M)
    inv_det = det.reciprocal() if isinstance(det, (Jet4, Jet2)) else 1.0 / det
    out = [[None] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            cof = _det3(_minor(M, j, i))
            if (i + j) % 2 == 1:
                cof = -cof
            out[i][j] = cof * inv_det
    return out


def _inverse3(M):
    det = _det3(M)
    inv_det = det.reciprocal() if isinstance(det, (Jet4, Jet2)) else 1.0 / det
    out = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            cof = _det2(_minor(M, j, i))
            if (i + j) % 2 == 1:
                cof = -cof
            out[i][j] = cof * inv_det
    return out, det


def _inner4(u, v):
    """Minkowski product of two 5-vectors of jets."""
    out = -(u[0] * v[0])
    for k in range(1, 5):
        out = out + u[k] * v[k]
    return out


# -- surface data extraction -----------------------------------------

def _values(fs: FrameState):
    """Point values (batched numpy arrays) of all closed-form ingredients."""
    Om = np.stack([np.stack([fs.Omega[i][j].value for j in range(2)], -1)
                   for i in range(2)], -2)
    Os = np.stack([np.stack([fs.OmegaStar[i][j].value for j in range(2)], -1)
                   for i in range(2)], -2)
    om = np.stack([fs.omega[0].value, fs.omega[1].value], -1)
    return {
        "m": fs.m.value, "E": fs.lj.E.value, "omega": om,
        "Omega": Om, "OmegaStar": Os,
        "detOm": Om[..., 0, 0] * Om[..., 1, 1] - Om[..., 0, 1] * Om[..., 1, 0],
        "detOs": Os[..., 0, 0] * Os[..., 1, 1] - Os[..., 0, 1] * Os[..., 1, 0],
        "trOmOs": np.einsum("...ij,...ij->...", Om, Os),
        "scriptH": fs.scriptH.value,
    }


def _pqr(d, rho):
    P = d["Omega"] + np.asarray(rho)[..., None, None] * d["OmegaStar"]
    return P[..., 0, 0], P[..., 0, 1], P[..., 1, 1]


# -- closed-form fundamental forms -----------------------------------

@dataclass
class AmbientPoint:
    """Parameter point (alpha, rho, u) of the associate 4-surface; rho = 0
    is the light-cone locus."""
    alpha: float
    rho: float
    u: tuple

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.rho < 0:
            raise ValueError("rho must be nonnegative")


@dataclass
class AmbientForms:
    """First/second fundamental forms of the associate 4-surface at fixed
    (alpha, rho), in coordinate order (alpha, rho, u1, u2)."""
    alpha: float
    rho: float
    G: np.ndarray            # batch + (4, 4)
    Ginv: np.ndarray         # block-formula inverse
    detG: np.ndarray         # closed form -(alpha^6/m^2)(pr - q^2)^2
    hh: np.ndarray           # second fundamental form w.r.t. xi
    pqr: np.ndarray          # 2x2 matrix Omega + rho Omega_star
    Htilde: np.ndarray       # tr(Ginv . hh)
    Htilde_closed: np.ndarray   # rational closed form in surface data
    inverse_residual: float  # max |G Ginv - I|
    numeric_inverse_residual: float  # max |Ginv - inv(G)| (direct inversion)


def ambient_metric(fs: FrameState, alpha: float, rho: float) -> np.ndarray:
    """First fundamental form of xt = alpha (y_l + rho y_star) as a
    batch + (4, 4) array, assembled from surface data."""
    d = _values(fs)
    p, q, r = _pqr(d, rho)
    m, om = d["m"], d["omega"]
    batch = np.broadcast_shapes(m.shape, p.shape)
    G = np.zeros(batch + (4, 4))
    G[..., 0, 0] = -2.0 * rho
    G[..., 0, 1] = G[..., 1, 0] = -alpha
    G[..., 1, 2] = G[..., 2, 1] = alpha ** 2 * om[..., 0]
    G[..., 1, 3] = G[..., 3, 1] = alpha ** 2 * om[..., 1]
    G[..., 2, 2] = alpha ** 2 * ((p * p + q * q) / m + 2 * rho * om[..., 0] ** 2)
    G[..., 2, 3] = G[..., 3, 2] = alpha ** 2 * (q * (p + r) / m
                                                + 2 * rho * om[..., 0] * om[..., 1])
    G[..., 3, 3] = alpha ** 2 * ((q * q + r * r) / m + 2 * rho * om[..., 1] ** 2)
    return G


def ambient_metric_inverse(fs: FrameState, alpha: float, rho: float) -> np.ndarray:
    """Block-formula inverse of the ambient metric.

    Only the reduced block F* = P^2/m (P = Omega + rho Omega_star) is ever
    inverted; all other entries are rational in F*^{-1} omega.
    """
    d = _values(fs)
    p, q, r = _pqr(d, rho)
    m, om = d["m"], d["omega"]
    disc = p * r - q * q
    pref = m / disc ** 2
    Fi = np.zeros(np.broadcast_shapes(m.shape, p.shape) + (2, 2))
    Fi[..., 0, 0] = pref * (r * r + q * q)
    Fi[..., 0, 1] = Fi[..., 1, 0] = -pref * q * (p + r)
    Fi[..., 1, 1] = pref * (p * p + q * q)
    Fw = np.einsum("...ij,...j->...i", Fi, om)
    s = np.einsum("...i,...i->...", om, Fw)
    Gi = np.zeros(Fi.shape[:-2] + (4, 4))
    Gi[..., 0, 0] = s
    Gi[..., 0, 1] = Gi[..., 1, 0] = (-1.0 - 2 * rho * s) / alpha
    Gi[..., 1, 1] = (2 * rho / alpha ** 2) * (1.0 + 2 * rho * s)
    for j in range(2):
        Gi[..., 0, 2 + j] = Gi[..., 2 + j, 0] = Fw[..., j] / alpha
        Gi[..., 1, 2 + j] = Gi[..., 2 + j, 1] = -2 * rho * Fw[..., j] / alpha ** 2
    Gi[..., 2:, 2:] = Fi / alpha ** 2
    return Gi


def ambient_second_form(fs: FrameState, alpha: float, rho: float) -> np.ndarray:
    """Second fundamental form w.r.t. the unit normal xi: zero except for
    the lower-right block alpha (Omega + rho Omega_star)."""
    d = _values(fs)
    P = d["Omega"] + rho * d["OmegaStar"]
    hh = np.zeros(P.shape[:-2] + (4, 4))
    hh[..., 2:, 2:] = alpha * P
    return hh


def ambient_forms(fs: FrameState, alpha: float, rho: float) -> AmbientForms:
    """Assemble the closed-form ambient data at fixed (alpha, rho) and
    cross-check the block inverse against direct numerical inversion."""
    d = _values(fs)
    p, q, r = _pqr(d, rho)
    disc = p * r - q * q
    detG = -(alpha ** 6 / d["m"] ** 2) * disc ** 2
    if np.any(np.abs(detG) < DEGENERACY_FLOOR * alpha ** 6):
        raise DegenerateAmbientError(
            f"associate surface degenerate at rho={rho}: det I vanishes")
    G = ambient_metric(fs, alpha, rho)
    Gi = ambient_metric_inverse(fs, alpha, rho)
    hh = ambient_second_form(fs, alpha, rho)
    eye = np.eye(4)
    inverse_residual = float(np.max(np.abs(G @ Gi - eye)))
    numeric_inverse_residual = float(np.max(np.abs(Gi - np.linalg.inv(G))))
    Htilde = np.einsum("...ab,...ab->...", Gi, hh)
    denom = d["detOm"] - rho * d["trOmOs"] + rho ** 2 * d["detOs"]
    Htilde_closed = rho * d["detOm"] * d["scriptH"] / (alpha * denom)
    return AmbientForms(alpha=alpha, rho=rho, G=G, Ginv=Gi, detG=detG, hh=hh,
                        pqr=d["Omega"] + rho * d["OmegaStar"], Htilde=Htilde,
                        Htilde_closed=Htilde_closed,
                        inverse_residual=inverse_residual,
                        numeric_inverse_residual=numeric_inverse_residual)


def degeneracy_roots(fs: FrameState):
    """Real roots in rho of the quadratic det Omega - rho tr(Omega Omega*)
    + rho^2 det Omega*, where the associate surface degenerates."""
    d = _values(fs)
    coeffs = [float(d["detOs"]), -float(d["trOmOs"]), float(d["detOm"])]
    if coeffs[0] == 0.0:
        if coeffs[1] == 0.0:
            return []
        return [-coeffs[2] / coeffs[1]]
    roots = np.roots(coeffs)
    return sorted(float(x.real) for x in roots if abs(x.imag) < 1e-12)


# -- direct jet route -------------------------------------------------

def _frame_jets4(fs: FrameState, order: int):
    """Promote the frame 5-vectors of an unbatched FrameState to Jet4."""
    y4 = [promote(c, order) for c in fs.y_l]
    ys4 = [promote(c, order) for c in fs.y_star]
    xi4 = [promote(c, order) for c in fs.xi]
    return y4, ys4, xi4


def ambient_jets(fs: FrameState, alpha: float, rho: float, order: int,
                 kappa: float = 1.0):
    """Direct-route ambient data as four-variable jets.

    Everything here is generic tensor calculus from xt and xi alone:
    G_AB = <xt_A, xt_B>, h_AB = -<xt_A, xi_B> (symmetrized), adjugate
    inverse, H = tr(Ginv h).  ``kappa`` applies the constant ambient
    rescaling eta -> kappa^2 eta used by the scaling sanity checks.
    Returns a dict of jets.
    """
    A = Jet4.variable(alpha, 0, order)
    R = Jet4.variable(rho, 1, order)
    y4, ys4, xi4 = _frame_jets4(fs, order)
    xt = [A * (y4[k] + R * ys4[k]) for k in range(5)]
    xt_d = [[c.deriv(ax) for c in xt] for ax in range(4)]
    xi_d = [[c.deriv(ax) for c in xi4] for ax in range(4)]
    k2 = kappa * kappa
    G = [[_inner4(xt_d[a], xt_d[b]) * k2 for b in range(4)] for a in range(4)]
    h = [[(_inner4(xt_d[a], xi_d[b]) + _inner4(xt_d[b], xi_d[a])) * (-0.5 * kappa)
          for b in range(4)] for a in range(4)]
    detG = _det4(G)
    if abs(detG.value) < DEGENERACY_FLOOR * (kappa ** 8) * alpha ** 6:
        raise DegenerateAmbientError("associate surface degenerate: det I vanishes")
    Ginv = _inverse4(G, detG)
    sqrt_det = (-detG).sqrt()
    Htilde = None
    for a in range(4):
        for b in range(4):
            t = Ginv[a][b] * h[a][b]
            Htilde = t if Htilde is None else Htilde + t
    normals = [_inner4(xt_d[a], xi4) for a in range(4)]
    return {"xt": xt, "xi": xi4, "G": G, "h": h, "detG": detG, "Ginv": Ginv,
            "sqrt_det": sqrt_det, "Htilde": Htilde, "normal_defect": normals}


def laplace_beltrami(f: Jet4, Ginv, sqrt_det: Jet4) -> Jet4:
    """Generic Laplace-Beltrami operator: (1/s) d_A (s g^{AB} d_B f) with
    s = sqrt(-det G).  The result is valid to two orders less than f."""
    out = None
    df = [f.deriv(b) for b in range(4)]
    for a in range(4):
        flux = None
        for b in range(4):
            t = Ginv[a][b] * df[b]
            flux = t if flux is None else flux + t
        term = (sqrt_det * flux).deriv(a)
        out = term if out is None else out + term
    return out * sqrt_det.reciprocal()


def _scalar_ingredients(fs: FrameState):
    """Unbatched Jet2 scalars entering the closed-form mean curvature and
    the block inverse: det Omega, tr(Omega Omega*), det Omega*."""
    Om, Os = fs.Omega, fs.OmegaStar
    detOm = Om[0][0] * Om[1][1] - Om[0][1] * Om[1][0]
    detOs = Os[0][0] * Os[1][1] - Os[0][1] * Os[1][0]
    trOmOs = (Om[0][0] * Os[0][0] + Om[0][1] * Os[0][1]
              + Om[1][0] * Os[1][0] + Om[1][1] * Os[1][1])
    return detOm, trOmOs, detOs


def htilde_jets(fs: FrameState, alpha: float, rho: float, order: int) -> Jet4:
    """Mean curvature of the associate surface as a four-variable jet,
    from the rational closed form
        H = rho det(Omega) scriptH / (alpha (det Omega - rho tr(Omega
        Omega*) + rho^2 det Omega*))."""
    A = Jet4.variable(alpha, 0, order)
    R = Jet4.variable(rho, 1, order)
    detOm, trOmOs, detOs = _scalar_ingredients(fs)
    num = R * promote(detOm * fs.scriptH, order)
    den = A * (promote(detOm, order) - R * promote(trOmOs, order)
               + R * R * promote(detOs, order))
    return num * den.reciprocal()


def appendix_inverse_jets(fs: FrameState, alpha: float, rho: float, order: int):
    """Block-formula inverse metric and sqrt(-det G) as four-variable jets
    (the closed-form counterpart of the adjugate route)."""
    A = Jet4.variable(alpha, 0, order)
    R = Jet4.variable(rho, 1, order)
    m4 = promote(fs.m, order)
    om4 = [promote(fs.omega[0], order), promote(fs.omega[1], order)]
    Om = [[promote(fs.Omega[i][j], order) for j in range(2)] for i in range(2)]
    Os = [[promote(fs.OmegaStar[i][j], order) for j in range(2)] for i in range(2)]
    p = Om[0][0] + R * Os[0][0]
    q = Om[0][1] + R * (Os[0][1] + Os[1][0]) * 0.5
    r = Om[1][1] + R * Os[1][1]
    disc = p * r - q * q
    pref = m4 * (disc * disc).reciprocal()
    Fi = [[pref * (r * r + q * q), -(pref * q * (p + r))],
          [-(pref * q * (p + r)), pref * (p * p + q * q)]]
    Fw = [Fi[i][0] * om4[0] + Fi[i][1] * om4[1] for i in range(2)]
    s = om4[0] * Fw[0] + om4[1] * Fw[1]
    iA = A.reciprocal()
    iA2 = iA * iA
    two_rho = R * 2.0
    Gi = [[None] * 4 for _ in range(4)]
    Gi[0][0] = s
    Gi[0][1] = Gi[1][0] = iA * (-1.0 - two_rho * s)
    Gi[1][1] = iA2 * two_rho * (1.0 + two_rho * s)
    for j in range(2):
        Gi[0][2 + j] = Gi[2 + j][0] = iA * Fw[j]
        Gi[1][2 + j] = Gi[2 + j][1] = -(iA2 * two_rho * Fw[j])
        for i in range(2):
            Gi[2 + i][2 + j] = iA2 * Fi[i][j]
    # det G = -(A^6/m^2) disc^2 < 0, and disc < 0 near rho = 0
    sqrt_det = A * A * A * (-disc) * m4.reciprocal()
    return Gi, sqrt_det


# -- ruled 3-surface in the hyperboloid ------------------------------

@dataclass
class RuledForms:
    """Fundamental forms of x_plus = (e^t y_l + e^{-t} y_star)/sqrt(2) in
    the unit hyperboloid, coordinates (t, u1, u2)."""
    t: float
    I: np.ndarray            # 3x3
    II: np.ndarray           # 3x3, w.r.t. xi
    detI: np.ndarray
    Hplus: np.ndarray        # tr(I^{-1} II)
    Hplus_closed: np.ndarray
    position_norm: float     # <x_plus, x_plus>, must be -1


def ruled_surface_forms(fs: FrameState, t: float, order: int = 1) -> RuledForms:
    """Direct jet computation of the ruled 3-surface data at parameter t,
    with the closed-form mean curvature for comparison."""
    T = Jet4.variable(t, 0, order)
    y4, ys4, xi4 = _frame_jets4(fs, order)
    c = 1.0 / math.sqrt(2.0)
    ep, em = T.exp(), (-T).exp()
    xp = [(ep * y4[k] + em * ys4[k]) * c for k in range(5)]
    axes = (0, 2, 3)
    xp_d = [[v.deriv(ax) for v in xp] for ax in axes]
    xi_d = [[v.deriv(ax) for v in xi4] for ax in axes]
    I = np.array([[_inner4(xp_d[a], xp_d[b]).value for b in range(3)]
                  for a in range(3)])
    II = np.array([[-0.5 * (_inner4(xp_d[a], xi_d[b]).value
                            + _inner4(xp_d[b], xi_d[a]).value)
                    for b in range(3)] for a in range(3)])
    detI = np.linalg.det(I)
    if abs(detI) < DEGENERACY_FLOOR:
        raise DegenerateAmbientError("ruled surface degenerate: det I vanishes")
    Hplus = float(np.trace(np.linalg.solve(I, II)))
    d = _values(fs)
    den = (d["detOm"] - math.exp(-2 * t) * d["trOmOs"]
           + math.exp(-4 * t) * d["detOs"])
    closed = (math.exp(-3 * t) * math.sqrt(2.0) * d["detOm"] * d["scriptH"]
              / den)
    return RuledForms(t=t, I=I, II=II, detI=detI, Hplus=Hplus,
                      Hplus_closed=float(closed),
                      position_norm=float(_inner4(xp, xp).value))


# -- Christoffel symbols and covariant derivatives --------------------

@dataclass
class CovariantData:
    """Christoffel symbols, covariant derivatives of the second form and
    its divergence at (alpha, rho = 0), coordinate order (alpha, rho,
    u1, u2)."""
    alpha: float
    gamma: np.ndarray        # (4, 4, 4), gamma[c, a, b] = Gamma^c_ab
    h_cov: np.ndarray        # (4, 4, 4), h_cov[a, b, c] = h_{ab, c}
    phi: np.ndarray          # (4,), phi_a = h_{ab, c} g^{bc}
    grad_h_sq: float         # |nabla h|^2, full metric contraction


def _christoffels_and_cov(jet_data, order_used: int = 1):
    G, Ginv, h = jet_data["G"], jet_data["Ginv"], jet_data["h"]
    dG = [[[G[a][b].deriv(c) for c in range(4)] for b in range(4)]
          for a in range(4)]
    gamma = [[[None] * 4 for _ in range(4)] for _ in range(4)]
    for cc in range(4):
        for a in range(4):
            for b in range(4):
                acc = None
                for dd in range(4):
                    t = Ginv[cc][dd] * (dG[dd][a][b] + dG[dd][b][a]
                                        - dG[a][b][dd])
                    acc = t if acc is None else acc + t
                gamma[cc][a][b] = acc * 0.5
    h_cov = np.zeros((4, 4, 4))
    for a in range(4):
        for b in range(4):
            for cc in range(4):
                val = h[a][b].deriv(cc).value
                for dd in range(4):
                    val -= gamma[dd][cc][a].value * h[dd][b].value
                    val -= gamma[dd][cc][b].value * h[a][dd].value
                h_cov[a, b, cc] = val
    return gamma, h_cov


def christoffels_and_covariant_h(fs: FrameState, alpha: float,
                                 kappa: float = 1.0) -> CovariantData:
    """Generic Christoffel symbols and covariant derivatives h_{AB,C} of
    the associate surface at rho = 0, with the divergence phi_A and the
    full contraction |nabla h|^2."""
    data = ambient_jets(fs, alpha, 0.0, 2, kappa=kappa)
    gamma, h_cov = _christoffels_and_cov(data)
    gi = np.array([[data["Ginv"][a][b].value for b in range(4)]
                   for a in range(4)])
    phi = np.einsum("abc,bc->a", h_cov, gi)
    grad_sq = float(np.einsum("abc,ijk,ai,bj,ck->", h_cov, h_cov, gi, gi, gi))
    gvals = np.array([[[gamma[c][a][b].value for b in range(4)]
                       for a in range(4)] for c in range(4)])
    return CovariantData(alpha=alpha, gamma=gvals, h_cov=h_cov, phi=phi,
                         grad_h_sq=grad_sq)


# -- scalar invariants ------------------------------------------------

INVARIANT_ORDERS = {
    "norm_h_sq": 2, "tr_h2": 2, "tr_h3": 3, "tr_h4": 4,
    "laplace_H": 3, "grad_h_sq": 4, "double_laplace_H": 5,
}

SURFACE_INVARIANT_ORDERS = {
    "normII2": 2, "willmore": 3, "grad_form": 4, "dlap_willmore": 5,
}


def surface_invariants(fs: FrameState) -> dict:
    """The closed-form surface scalars underlying the ambient invariants
    (batched numpy values), normalised so that each ambient invariant of
    homogeneity degree k equals the listed multiple of value / alpha^k:

      normII2        |IIo_l|^2 = alpha^2 |h|^2                  (order 2)
      willmore       scriptH = alpha^3 Lap H / 2                (order 3)
      grad_form      alpha^4 |cov-der h|^2                      (order 4)
      dlap_willmore  alpha^5 Lap Lap H / 8                      (order 5)

    The order-4 and order-5 scalars are universal rational-differential
    expressions in (E, omega, Omega, Omega*, scriptH), generated once
    symbolically from the ambient metric (see _invariant_forms) and
    validated against the generic four-variable-jet oracle.
    """
    iio_sq = fs.lj.norm_IIo_sq
    sH = fs.scriptH

    def part(jet, a, b):
        return jet.c[..., a, b] * float(math.factorial(a) * math.factorial(b))

    named = {"E": fs.lj.E, "O11": fs.Omega[0][0], "O12": fs.Omega[0][1],
             "S11": fs.OmegaStar[0][0], "S12": fs.OmegaStar[0][1],
             "cH": sH, "w1": fs.omega[0], "w2": fs.omega[1]}

    def call(func):
        args = inspect.signature(func).parameters
        return func(**{a: part(named[a.rsplit("_", 1)[0]],
                               int(a[-2]), int(a[-1])) for a in args})

    grad_form = call(_invariant_forms.grad_form_closed)
    dbl = call(_invariant_forms.dlap_closed)
    return {
        "normII2": iio_sq.value, "willmore": sH.value,
        "grad_form": grad_form, "dlap_willmore": dbl,
    }


@dataclass
class InvariantRecord:
    """One scalar invariant of the associate surface at (alpha, rho = 0);
    ``order`` is the homogeneity degree k: value * alpha^k is alpha-free."""
    name: str
    value: float
    order: int
    alpha: float
    rho: float = 0.0


def invariant_suite(fs: FrameState, alpha: float) -> list:
    """Closed-form scalar invariants of the associate surface at rho = 0."""
    s = surface_invariants(fs)
    iio = s["normII2"]
    records = [
        InvariantRecord("norm_h_sq", iio / alpha ** 2, 2, alpha),
        InvariantRecord("tr_h2", iio / alpha ** 2, 2, alpha),
        InvariantRecord("tr_h3", 0.0 * iio, 3, alpha),
        InvariantRecord("tr_h4", 0.5 * iio ** 2 / alpha ** 4, 4, alpha),
        InvariantRecord("laplace_H", 2.0 * s["willmore"] / alpha ** 3, 3, alpha),
        InvariantRecord("grad_h_sq", s["grad_form"] / alpha ** 4, 4, alpha),
        InvariantRecord("double_laplace_H", 8.0 * s["dlap_willmore"] / alpha ** 5,
                        5, alpha),
    ]
    return records


def direct_invariants(fs: FrameState, alpha: float, kappa: float = 1.0) -> dict:
    """Oracle route for the rho = 0 invariants through four-variable jets:
    generic metric/second-form contractions, the generic Laplace-Beltrami
    operator and generic covariant derivatives.  Requires an unbatched
    FrameState of order >= 3."""
    data = ambient_jets(fs, alpha, 0.0, 3, kappa=kappa)
    gi = np.array([[data["Ginv"][a][b].value for b in range(4)]
                   for a in range(4)])
    hv = np.array([[data["h"][a][b].value for b in range(4)]
                   for a in range(4)])
    shape_op = gi @ hv
    lap_H = laplace_beltrami(data["Htilde"], data["Ginv"], data["sqrt_det"])
    cov = christoffels_and_covariant_h(fs, alpha, kappa=kappa)
    return {
        "mean_curvature": float(np.trace(shape_op)),
        "norm_h_sq": float(np.einsum("ab,ij,ai,bj->", hv, hv, gi, gi)),
        "tr_h2": float(np.trace(shape_op @ shape_op)),
        "tr_h3": float(np.trace(shape_op @ shape_op @ shape_op)),
        "tr_h4": float(np.trace(np.linalg.matrix_power(shape_op, 4))),
        "laplace_H": lap_H.value,
        "grad_h_sq": cov.grad_h_sq,
    }


def double_laplace_direct(fs: FrameState, alpha: float,
                          kappa: float = 1.0) -> float:
    """Oracle for the order-5 invariant: two applications of the generic
    Laplace-Beltrami operator to the closed-form mean curvature, with the
    block-formula inverse metric as four-variable jets.  Requires an
    unbatched FrameState of order >= 4."""
    order = 4
    H4 = htilde_jets(fs, alpha, 0.0, order)
    Gi, sdet = appendix_inverse_jets(fs, alpha, 0.0, order)
    if kappa != 1.0:
        Gi = [[g * kappa ** -2 for g in row] for row in Gi]
        sdet = sdet * kappa ** 4
        H4 = H4 * (1.0 / kappa)
    lap = laplace_beltrami(H4, Gi, sdet)
    lap2 = laplace_beltrami(lap, Gi, sdet)
    return lap2.value


# -- conformal invariance ---------------------------------------------

def conformal_invariance_check(chart, factor, name: str, points=None,
                               order: int = 2):
    """Fit the conformal weight of a surface invariant.

    Computes the invariant under lambda and under lambda == 1 at the same
    points and least-squares fits log(I_lambda / I_1) = -k log(lambda_hat)
    through the origin.  Returns (exponent, residual, vacuous).
    """
    from .frame import conformal_frame
    from .surfaces import ConformalFactor
    if name not in SURFACE_INVARIANT_ORDERS:
        raise KeyError(f"unknown invariant {name!r}")
    if points is None:
        n = 5
        g1 = chart.periods[0] * (np.arange(n) + 0.31) / n
        g2 = chart.periods[1] * (np.arange(n) + 0.47) / n
        points = (np.repeat(g1, n), np.tile(g2, n))
    fs1 = conformal_frame(chart, ConformalFactor.constant(1.0), points, order)
    fsl = conformal_frame(chart, factor, points, order)
    i1 = surface_invariants(fs1)[name]
    il = surface_invariants(fsl)[name]
    lam = fsl.lam_hat.value
    scale = np.max(np.abs(i1))
    if scale < 1e-12:
        return 0.0, 0.0, True
    keep = np.abs(i1) > 1e-8 * scale
    x = -np.log(lam[keep])
    y = np.log(il[keep] / i1[keep])
    k = float(np.sum(x * y) / np.sum(x * x))
    residual = float(np.max(np.abs(y - k * x)))
    return k, residual, False
