"""Classical surface geometry in (S^3, lambda^2 g0), all jet-valued.

Covers the first/second fundamental forms of an isothermal immersion into the
round 3-sphere, the unit normal (orientation fixed by det(x, x_u1, x_u2, n) >
0 in R^4), mean and Gaussian curvature, the conformal change of all of these
under a new representative lambda^2 g0, and the curvature tensor components
of lambda^2 g0 in the surface-adapted frame {x_u1, x_u2, n_unit}.

Curvature components follow the convention in which the round metric has
R_{1212} = E^2, R_{i3j3} = E delta_ij (coordinate-frame values, index 3 along
the lambda-unit normal) and Ric = 2 g.  They are obtained from the standard
conformal transformation law of the curvature tensor in dimension 3, which
only needs the ambient Hessian of log(lambda) on the round sphere -- exact
for the affine factors in the catalog.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAmbientError, UmbilicPointError
from .jets import Jet2
from .surfaces import ConformalFactor, SurfaceChart

EPS_UMBILIC = 1e-8

__all__ = [
    "ClassicalJet", "LambdaJet", "CurvatureData",
    "classical_geometry", "conformal_change", "conformal_curvature",
    "lambda_geometry", "codazzi_residual_classical",
    "dot4", "EPS_UMBILIC",
]


def dot4(u, v) -> Jet2:
    """Euclidean dot product of two 4-lists of Jet2."""
    out = u[0] * v[0]
    for k in range(1, 4):
        out = out + u[k] * v[k]
    return out


def _det3(m) -> Jet2:
    """Determinant of a 3x3 nested list of Jet2."""
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _cross4(a, b, c):
    """Generalized cross product in R^4 of three 4-lists of Jet2.

    The returned vector n satisfies det(n, a, b, c) = |n|^2 > 0.  For the
    catalog charts this orientation gives the curvature signs of the flat
    torus family (H = (s^2-r^2)/(2rs) with principal curvatures s/r, -r/s).
    """
    out = []
    cols = [0, 1, 2, 3]
    for i in range(4):
        rest = [j for j in cols if j != i]
        minor = [[v[j] for j in rest] for v in (a, b, c)]
        sign = 1.0 if i % 2 == 0 else -1.0  # cofactor in row 1, column i
        out.append(_det3(minor).scale(sign))
    return out


@dataclass
class ClassicalJet:
    """Round-metric surface data at a point batch, as jets."""
    order: int
    x: list          # immersion components (4 Jet2)
    xu: list         # [x_u1, x_u2], each a 4-list of Jet2
    n: list          # unit normal in S^3 (4 Jet2)
    E: Jet2
    e: Jet2
    f: Jet2
    g: Jet2
    H: Jet2
    K: Jet2
    IIo: list        # traceless second fundamental form, 2x2 nested Jet2

    @property
    def norm_IIo_sq(self) -> Jet2:
        """|IIo|^2 with both indices raised by I = E |du|^2."""
        invE = self.E.reciprocal()
        s = self.IIo[0][0] * self.IIo[0][0] + self.IIo[1][1] * self.IIo[1][1] \
            + self.IIo[0][1] * self.IIo[0][1] * 2.0
        return s * invE * invE


def classical_geometry(chart: SurfaceChart, point, order: int) -> ClassicalJet:
    """Fundamental forms, normal and curvatures of the chart at ``point``.

    ``point`` may hold arrays for batched evaluation.  Immersion jets are
    taken at ``order + 2`` so every returned jet is valid to ``order``.
    """
    x = chart.jet(np.asarray(point[0], dtype=float), np.asarray(point[1], dtype=float),
                  order + 2)
    xu = [[c.deriv(0) for c in x], [c.deriv(1) for c in x]]
    E = dot4(xu[0], xu[0])
    if np.any(E.value < 1e-12):
        raise DegenerateAmbientError("immersion is degenerate (E ~ 0)")
    n_raw = _cross4(x, xu[0], xu[1])
    inv_norm = dot4(n_raw, n_raw).sqrt().reciprocal()
    n = [c * inv_norm for c in n_raw]
    xuu = [[c.deriv(0) for c in xu[0]],
           [c.deriv(1) for c in xu[0]],
           [c.deriv(1) for c in xu[1]]]
    e = dot4(n, xuu[0])
    f = dot4(n, xuu[1])
    g = dot4(n, xuu[2])
    invE = E.reciprocal()
    H = (e + g) * invE * 0.5
    K = (e * g - f * f) * invE * invE + 1.0
    half = (e - g) * 0.5
    IIo = [[half, f], [f, -half]]
    return ClassicalJet(order=order, x=x, xu=xu, n=n, E=E, e=e, f=f, g=g,
                        H=H, K=K, IIo=IIo)


@dataclass
class CurvatureData:
    """Curvature of lambda^2 g0 at the surface, frame {x_u1, x_u2, n/lambda}.

    R_i3j3 and Ric_3i are coordinate-frame components with the third index
    along the lambda-unit normal; R1212 is the full coordinate component
    (equal to K_T * E_lambda^2); DivRic is E_lambda^{-1} sum_i d_i Ric_3i.
    """
    R_i3j3: list     # 2x2 nested Jet2
    Ric_3i: list     # [Jet2, Jet2]
    Ric_33: Jet2
    K_T: Jet2
    R1212: Jet2
    DivRic: Jet2


@dataclass
class LambdaJet:
    """Surface data after the conformal change g0 -> lambda^2 g0."""
    order: int
    cj: ClassicalJet
    lam_hat: Jet2
    lam_n: Jet2
    E: Jet2
    e: Jet2
    f: Jet2
    g: Jet2
    H: Jet2
    IIo: list
    curv: CurvatureData | None = None

    @property
    def norm_IIo_sq(self) -> Jet2:
        invE = self.E.reciprocal()
        s = self.IIo[0][0] * self.IIo[0][0] + self.IIo[1][1] * self.IIo[1][1] \
            + self.IIo[0][1] * self.IIo[0][1] * 2.0
        return s * invE * invE

    @property
    def det_Omega(self) -> Jet2:
        return self.IIo[0][0] * self.IIo[1][1] - self.IIo[0][1] * self.IIo[0][1]


def conformal_change(cj: ClassicalJet, lam_hat: Jet2, lam_n: Jet2) -> LambdaJet:
    """Transform fundamental forms to the representative lambda^2 g0:
    I_l = lam^2 I, II_l = lam II - lam_n I, H_l = (H - lam_n/lam)/lam."""
    if np.any(lam_hat.value <= 0):
        raise ValueError("lambda must be positive on the surface")
    E_l = lam_hat * lam_hat * cj.E
    e_l = lam_hat * cj.e - lam_n * cj.E
    f_l = lam_hat * cj.f
    g_l = lam_hat * cj.g - lam_n * cj.E
    inv_lam = lam_hat.reciprocal()
    H_l = (cj.H - lam_n * inv_lam) * inv_lam
    IIo_l = [[lam_hat * cj.IIo[0][0], lam_hat * cj.IIo[0][1]],
             [lam_hat * cj.IIo[1][0], lam_hat * cj.IIo[1][1]]]
    return LambdaJet(order=cj.order, cj=cj, lam_hat=lam_hat, lam_n=lam_n,
                     E=E_l, e=e_l, f=f_l, g=g_l, H=H_l, IIo=IIo_l)


def conformal_curvature(factor: ConformalFactor, cj: ClassicalJet,
                        lam_hat: Jet2) -> CurvatureData:
    """Curvature components of lambda^2 g0 along the surface.

    Conformal transformation law for gbar = e^{2 phi} g in dimension 3 (with
    the sign convention fixed in the module docstring):

        Rbar_ABCD = e^{2 phi} [ R_ABCD - (g /\\ W)_ABCD ],
        W_AB = Hess phi(X_A, X_B) - phi_A phi_B + 1/2 |grad phi|^2 g_AB,

    evaluated on the frame {x_u1, x_u2, n}.  For affine lambda = a + b.x the
    round-sphere Hessian of the linear part is -(b.x) g0, so everything is in
    closed form.
    """
    order = cj.order
    batch = cj.E.batch_shape
    frame = [cj.xu[0], cj.xu[1], cj.n]
    # round-metric Gram matrix of the frame and its inverse
    G = [[dot4(frame[a], frame[b]) for b in range(3)] for a in range(3)]
    invE = cj.E.reciprocal()
    Ginv = [[invE if a == b else Jet2.constant(0.0, order, batch) for b in range(3)]
            for a in range(3)]
    Ginv[2][2] = Jet2.constant(1.0, order, batch)

    inv_lam = lam_hat.reciprocal()
    log_lam = lam_hat.log()
    ell = cj.x[0].scale(factor.b[0])
    for k in range(1, 4):
        ell = ell + cj.x[k].scale(factor.b[k])
    b_sq = float(np.dot(factor.b, factor.b))
    grad_phi_sq = (b_sq - ell * ell) * inv_lam * inv_lam
    bX = [factor.directional(frame[a]) for a in range(3)]
    phi = [log_lam.deriv(0), log_lam.deriv(1), bX[2] * inv_lam]

    W = [[(-(ell * inv_lam) * G[a][b] - bX[a] * bX[b] * inv_lam * inv_lam
           - phi[a] * phi[b] + grad_phi_sq * G[a][b] * 0.5)
          for b in range(3)] for a in range(3)]

    lam_sq = lam_hat * lam_hat

    def Rbar(a, b, c, d):
        r0 = G[a][c] * G[b][d] - G[a][d] * G[b][c]
        gw = G[a][c] * W[b][d] + G[b][d] * W[a][c] - G[a][d] * W[b][c] - G[b][c] * W[a][d]
        return lam_sq * (r0 - gw)

    R = [[[[Rbar(a, b, c, d) for d in range(3)] for c in range(3)]
          for b in range(3)] for a in range(3)]

    # Ricci of lambda^2 g0 in the raw frame: contract slots 1 and 3 with the
    # inverse of lam^2 G (diagonal in this frame).
    inv_lam_sq = inv_lam * inv_lam

    def ric(b, d):
        acc = None
        for a in range(3):
            term = Ginv[a][a] * R[a][b][a][d]
            acc = term if acc is None else acc + term
        return acc * inv_lam_sq

    E_l = lam_sq * cj.E
    inv_E_l = E_l.reciprocal()
    R_i3j3 = [[R[i][2][j][2] * inv_lam_sq for j in range(2)] for i in range(2)]
    Ric_3i = [ric(2, 0) * inv_lam, ric(2, 1) * inv_lam]
    Ric_33 = ric(2, 2) * inv_lam_sq
    K_T = R[0][1][0][1] * inv_E_l * inv_E_l
    R1212 = R[0][1][0][1]
    DivRic = (Ric_3i[0].deriv(0) + Ric_3i[1].deriv(1)) * inv_E_l
    return CurvatureData(R_i3j3=R_i3j3, Ric_3i=Ric_3i, Ric_33=Ric_33,
                         K_T=K_T, R1212=R1212, DivRic=DivRic)


def lambda_geometry(chart: SurfaceChart, factor: ConformalFactor, point,
                    order: int) -> LambdaJet:
    """Full lambda-metric surface data (fundamental forms + curvature)."""
    cj = classical_geometry(chart, point, order)
    lam_hat = factor.hat(cj.x)
    lam_n = factor.directional(cj.n)
    lj = conformal_change(cj, lam_hat, lam_n)
    lj.curv = conformal_curvature(factor, cj, lam_hat)
    det = lj.det_Omega.value
    if np.any(np.abs(det) < EPS_UMBILIC):
        raise UmbilicPointError("surface has an (approximately) umbilic point")
    return lj


def isothermal_christoffels(E: Jet2):
    """Christoffel symbols of a conformally flat metric E |du|^2:
    Gamma^k_ij, returned as nested lists Gamma[k][i][j] of Jet2."""
    log_E = E.log()
    dE = [log_E.deriv(0), log_E.deriv(1)]
    order = dE[0].order
    batch = E.batch_shape
    zero = Jet2.constant(0.0, order, batch)
    Gamma = [[[zero for _ in range(2)] for _ in range(2)] for _ in range(2)]
    for k in range(2):
        for i in range(2):
            for j in range(2):
                term = zero
                if i == k:
                    term = term + dE[j] * 0.5
                if j == k:
                    term = term + dE[i] * 0.5
                if i == j:
                    term = term - dE[k] * 0.5
                Gamma[k][i][j] = term
    return Gamma


def codazzi_residual_classical(lj: LambdaJet):
    """Residual tensor of the Codazzi equation for the traceless form in
    (S^3, lambda^2 g0):

        (Omega)_{ij,k} - (Omega)_{ik,j} - R_{3ijk}
            - (H)_{u^j} E delta_{ik} + (H)_{u^k} E delta_{ij}

    with covariant derivatives of I_lambda and R_{3ijk} assembled from the
    mixed Ricci components by the 3-dimensional curvature decomposition:
    R_{3ijk} = E (delta_{ij} Ric_{3k} - delta_{ik} Ric_{3j}) (the sign that
    closes the identity; verified on catalog charts with affine lambda).
    """
    E, Om, curv = lj.E, lj.IIo, lj.curv
    Gamma = isothermal_christoffels(E)
    dH = [lj.H.deriv(0), lj.H.deriv(1)]

    def cov_d(k, i, j):
        out = Om[i][j].deriv(k)
        for l in range(2):
            out = out - Gamma[l][k][i] * Om[l][j] - Gamma[l][k][j] * Om[i][l]
        return out

    res = [[[None for _ in range(2)] for _ in range(2)] for _ in range(2)]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                r3 = E * (curv.Ric_3i[k] if i == j else Jet2.constant(
                    0.0, E.order, E.batch_shape))
                r3 = r3 - E * (curv.Ric_3i[j] if i == k else Jet2.constant(
                    0.0, E.order, E.batch_shape))
                term = cov_d(k, i, j) - cov_d(j, i, k) - r3
                if i == k:
                    term = term - dH[j] * E
                if i == j:
                    term = term + dH[k] * E
                res[i][j][k] = term
    return res
