"""The conformal frame of an umbilic-free surface in the light-cone model.

For a surface x in (S^3, lambda^2 g0) with isothermal lift y_l = lambda (1, x)
into the positive light cone, this module computes

* the conformal Gauss map  xi = H_l y_l + n_l  (a unit spacelike map into de
  Sitter space, independent of the representative lambda),
* the Mobius metric  <d xi, d xi> = m |du|^2  with  m = E_l |IIo_l|^2 / 2,
* the null duals y_dagger and y_star (<y, y_dagger> = <y, y_star> = -1) and
  the conformal transform x_star carried by the y_star ray,
* the tensors omega, Omega, Omega_star of the xi-surface, the trace
  tr(Omega_star) = -E_l * scriptH, and the Willmore operator

      scriptH = Lap_l H_l + |IIo_l|^2 H_l + (IIo_l)^{ij} R_{i3j3} - DivRic,

* residuals of the moving-frame derivative identities, used by the check
  suites and as the oracle for the closed-form Omega_star.

Omega_star is computed twice on purpose: once from its definition
-<xi_ui, (y_star)_uj> by jet differentiation, and once from the closed-form
surface-data expression; agreement of the two routes is a standing test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import (LambdaJet, isothermal_christoffels, lambda_geometry)
from .errors import DegenerateAmbientError
from .jets import Jet2
from .mink5 import jet_inner
from .surfaces import ConformalFactor, SurfaceChart

__all__ = [
    "FrameState", "conformal_frame", "frame_derivative_residuals",
    "omega_star_closed_form",
]


def _jv_scale(v, s):
    return [c * s for c in v]


def _jv_add(*vs):
    out = list(vs[0])
    for v in vs[1:]:
        out = [a + b for a, b in zip(out, v)]
    return out


def _jv_deriv(v, axis):
    return [c.deriv(axis) for c in v]


@dataclass
class FrameState:
    """All conformal-frame data at a point batch; jets valid to ``order``."""
    order: int
    chart: SurfaceChart
    factor: ConformalFactor
    lj: LambdaJet
    lam_hat: Jet2
    y: list           # (1, x), 5 Jet2
    y_l: list         # lambda (1, x)
    n_l: list         # unit normal of the lift
    xi: list          # conformal Gauss map
    y_dag: list       # y_dagger of the lambda-sphere
    y_star: list      # canonical second null direction
    m: Jet2           # Mobius metric coefficient
    omega: list       # [omega_1, omega_2]
    omega_sq: Jet2    # |omega|^2 with respect to I_lambda
    Omega: list       # 2x2 nested Jet2 (= IIo_lambda)
    OmegaStar: list   # 2x2 nested Jet2, definitional route
    scriptH: Jet2     # Willmore operator of (x, lambda^2 g0)
    x_star: list      # conformal transform, 4 Jet2
    mu_star: Jet2     # time component of y_star
    a_param: Jet2     # a = (|omega|^2 + H^2 - 1)/(|omega|^2 + H^2 + 1)

    @property
    def H_xi_coeff(self) -> Jet2:
        """Scalar factor of the xi-surface mean curvature vector
        H^xi = 2 lam^2 (scriptH / |IIo_l|^2) y_star."""
        return (self.lam_hat * self.lam_hat * self.scriptH
                * self.lj.norm_IIo_sq.reciprocal() * 2.0)

    @property
    def H_xi(self) -> list:
        c = self.H_xi_coeff
        return [v * c for v in self.y_star]

    @property
    def trace_Omega_star(self) -> Jet2:
        return self.OmegaStar[0][0] + self.OmegaStar[1][1]


def conformal_frame(chart: SurfaceChart, factor: ConformalFactor, point,
                    order: int = 1) -> FrameState:
    """Build the conformal frame at ``point`` (batched), valid to ``order``.

    The immersion is sampled at order + 4: omega costs one derivative of H,
    Omega_star and scriptH cost two more.
    """
    lj = lambda_geometry(chart, factor, point, order + 2)
    cj = lj.cj
    lam = lj.lam_hat
    batch = lam.batch_shape
    jo = lam.order

    one = Jet2.constant(1.0, jo, batch)
    zero = Jet2.constant(0.0, jo, batch)
    y = [one] + list(cj.x)
    y_l = _jv_scale(y, lam)
    n_vec = [zero] + list(cj.n)
    kappa = lj.lam_n * lam.reciprocal()
    n_l = _jv_add(n_vec, _jv_scale(y, kappa))
    xi = _jv_add(_jv_scale(y, cj.H), n_vec)

    E_l = lj.E
    inv_E_l = E_l.reciprocal()
    norm_IIo_sq = lj.norm_IIo_sq
    m = E_l * norm_IIo_sq * 0.5

    # y_dagger: (1/lam) ( |grad log lam|^2/2 * y + (1, -x)/2 + (0, grad log lam) )
    g4 = factor.grad_log_s3(cj.x, lam)
    g_sq = g4[0] * g4[0] + g4[1] * g4[1] + g4[2] * g4[2] + g4[3] * g4[3]
    y_half_dag = [one * 0.5] + [c * (-0.5) for c in cj.x]
    inv_lam = lam.reciprocal()
    y_dag = _jv_scale(
        _jv_add(_jv_scale(y, g_sq * 0.5), y_half_dag, [zero] + g4), inv_lam)

    # omega from -Omega omega = E_l (dH_l - Ric_3.): the curvature term keeps
    # y_star orthogonal to d(xi) for non-constant lambda (it vanishes for the
    # round representative, where this reduces to -Omega omega = E dH).
    Om = lj.IIo
    detOm = lj.det_Omega
    inv_det = detOm.reciprocal()
    dH = [lj.H.deriv(0), lj.H.deriv(1)]
    ric3 = lj.curv.Ric_3i
    rhs = [(dH[0] - ric3[0]) * E_l * (-1.0), (dH[1] - ric3[1]) * E_l * (-1.0)]
    omega = [(Om[1][1] * rhs[0] - Om[0][1] * rhs[1]) * inv_det,
             (Om[0][0] * rhs[1] - Om[0][1] * rhs[0]) * inv_det]
    omega_sq = (omega[0] * omega[0] + omega[1] * omega[1]) * inv_E_l

    # y_star = (|omega|^2 + H^2)/2 y_l + y_dag + H n_l + (omega_i/E_l) (y_l)_ui
    H_l = lj.H
    y_l_u = [_jv_deriv(y_l, 0), _jv_deriv(y_l, 1)]
    tang = _jv_add(_jv_scale(y_l_u[0], omega[0] * inv_E_l),
                   _jv_scale(y_l_u[1], omega[1] * inv_E_l))
    y_star = _jv_add(_jv_scale(y_l, (omega_sq + H_l * H_l) * 0.5),
                     y_dag, _jv_scale(n_l, H_l), tang)

    mu_star = y_star[0]
    if np.any(mu_star.value <= 0):
        raise DegenerateAmbientError("y_star left the forward light cone")
    inv_mu = mu_star.reciprocal()
    x_star = [y_star[k] * inv_mu for k in range(1, 5)]
    s = omega_sq + H_l * H_l
    a_param = (s - 1.0) * (s + 1.0).reciprocal()

    # Omega = IIo_lambda; Omega_star by definition -<xi_ui, (y_star)_uj>
    xi_u = [_jv_deriv(xi, 0), _jv_deriv(xi, 1)]
    y_star_u = [_jv_deriv(y_star, 0), _jv_deriv(y_star, 1)]
    OmegaStar = [[jet_inner(xi_u[i], y_star_u[j]) * (-1.0) for j in range(2)]
                 for i in range(2)]

    # Willmore operator
    curv = lj.curv
    lap_H = (H_l.deriv(0).deriv(0) + H_l.deriv(1).deriv(1)) * inv_E_l
    RIIo = zero
    for i in range(2):
        for j in range(2):
            RIIo = RIIo + Om[i][j] * curv.R_i3j3[i][j]
    scriptH = lap_H + norm_IIo_sq * H_l + RIIo * inv_E_l * inv_E_l - curv.DivRic

    return FrameState(order=order, chart=chart, factor=factor, lj=lj,
                      lam_hat=lam, y=y, y_l=y_l, n_l=n_l, xi=xi, y_dag=y_dag,
                      y_star=y_star, m=m, omega=omega, omega_sq=omega_sq,
                      Omega=Om, OmegaStar=OmegaStar, scriptH=scriptH,
                      x_star=x_star, mu_star=mu_star, a_param=a_param)


def omega_star_closed_form(fs: FrameState):
    """Omega_star from surface data only (no y_star differentiation):

        Omega*_ij = -Hess^m_ij(H) + Nabla^m_j Ric_3i - H m delta_ij
                    - E^{-1} Omega_ik R_k3j3 + (Ric_33 - K_T)/2 Omega_ij
                    - (|omega|^2 + H^2)/2 Omega_ij

    with Hess^m / Nabla^m covariant with respect to the Mobius metric
    m |du|^2.  All lambda-metric quantities; compared against the
    definitional route in the check suites.
    """
    lj, curv = fs.lj, fs.lj.curv
    H_l, E_l, Om, m = lj.H, lj.E, lj.IIo, fs.m
    inv_E_l = E_l.reciprocal()
    Gm = isothermal_christoffels(m)
    dH = [H_l.deriv(0), H_l.deriv(1)]
    out = [[None, None], [None, None]]
    mid = (curv.Ric_33 - curv.K_T) * 0.5 - (fs.omega_sq + H_l * H_l) * 0.5
    for i in range(2):
        for j in range(2):
            hess = H_l.deriv(i).deriv(j)
            for k in range(2):
                hess = hess - Gm[k][i][j] * dH[k]
            dric = curv.Ric_3i[i].deriv(j)
            for k in range(2):
                dric = dric - Gm[k][j][i] * curv.Ric_3i[k]
            term = -hess + dric + mid * Om[i][j]
            if i == j:
                term = term - H_l * m
            for k in range(2):
                term = term - Om[i][k] * curv.R_i3j3[k][j] * inv_E_l
            out[i][j] = term
    return out


def frame_derivative_residuals(fs: FrameState):
    """Residual 5-vectors of the moving-frame derivative expansions

        (y_l)_ui  = -omega_i y_l  - (Omega_i.  / m) . grad xi
        (y*_l)_ui = +omega_i y*_l - (Omega*_i. / m) . grad xi

    and of the lifted Laplace identity
        Lap0 y_l = 2 E H n_l + 2 E y_dag - E K_T y_l.

    Returns a dict of names -> lists of Jet2 components.
    """
    inv_m = fs.m.reciprocal()
    xi_u = [_jv_deriv(fs.xi, 0), _jv_deriv(fs.xi, 1)]
    res = {}
    for i in range(2):
        lhs = _jv_deriv(fs.y_l, i)
        rhs = _jv_add(_jv_scale(fs.y_l, fs.omega[i] * (-1.0)),
                      _jv_scale(xi_u[0], fs.Omega[i][0] * inv_m * (-1.0)),
                      _jv_scale(xi_u[1], fs.Omega[i][1] * inv_m * (-1.0)))
        res[f"y_u{i + 1}"] = [a - b for a, b in zip(lhs, rhs)]
        lhs = _jv_deriv(fs.y_star, i)
        rhs = _jv_add(_jv_scale(fs.y_star, fs.omega[i]),
                      _jv_scale(xi_u[0], fs.OmegaStar[i][0] * inv_m * (-1.0)),
                      _jv_scale(xi_u[1], fs.OmegaStar[i][1] * inv_m * (-1.0)))
        res[f"y_star_u{i + 1}"] = [a - b for a, b in zip(lhs, rhs)]

    E_l, H_l = fs.lj.E, fs.lj.H
    lap_y = [c.deriv(0).deriv(0) + c.deriv(1).deriv(1) for c in fs.y_l]
    rhs = _jv_add(_jv_scale(fs.n_l, E_l * H_l * 2.0),
                  _jv_scale(fs.y_dag, E_l * 2.0),
                  _jv_scale(fs.y_l, E_l * fs.lj.curv.K_T * (-1.0)))
    res["lap_y"] = [a - b for a, b in zip(lap_y, rhs)]

    lap_xi = [c.deriv(0).deriv(0) + c.deriv(1).deriv(1) for c in fs.xi]
    rhs = _jv_add(_jv_scale(fs.y_l, fs.trace_Omega_star * (-1.0)),
                  _jv_scale(fs.xi, fs.m * (-2.0)))
    res["lap_xi"] = [a - b for a, b in zip(lap_xi, rhs)]
    return res
