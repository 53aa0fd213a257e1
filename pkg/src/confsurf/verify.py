"""Numerical verification suites for the whole pipeline.

Every suite is a deterministic function returning a plain dict

    {"suite": name,
     "checks": [{"name", "max_residual", "tolerance", "passed", ...}, ...],
     "passed": bool,
     "max_residual": float}

so the service layer, the command line and the test suite all share one
implementation.  Tolerances are pinned here; the checks exercise closed
forms against independent generic-tensor-calculus oracles, never a
formula against itself.
"""
from __future__ import annotations

import numpy as np

from . import ambient
from .ambient import (
    ambient_jets, appendix_inverse_jets, htilde_jets, laplace_beltrami,
    ruled_surface_forms, christoffels_and_covariant_h, surface_invariants,
    direct_invariants, double_laplace_direct, conformal_invariance_check,
    invariant_suite, SURFACE_INVARIANT_ORDERS, _inverse4, _det4,
)
from .classical import isothermal_christoffels
from .frame import conformal_frame, frame_derivative_residuals, omega_star_closed_form
from .mink5 import make_boost, make_rotation
from .reconstruction import (
    ConformalData, integrability_residuals, standard_seed, seed_from_frame,
    transform_seed, integrate_structure_equations, path_independence,
    extract_surface, surface_invariant_fields, chart_surface_field,
    GRAM_TARGET,
)
from .surfaces import catalog_surface, ConformalFactor

__all__ = [
    "SUITES", "run_suite", "suite_frame", "suite_willmore",
    "suite_appendixA", "suite_appendixB", "suite_conformal_scaling",
    "suite_equivariance", "suite_integrability", "suite_reconstruction",
]

_MDOT = np.diag([-1.0, 1.0, 1.0, 1.0, 1.0])

AFFINE_B = np.array([0.2, 0.0, 0.0, 0.0])
GENERIC_B = np.array([0.2, 0.05, -0.1, 0.04])


def _check(name: str, residual: float, tol: float, **extra) -> dict:
    residual = float(residual)
    out = {"name": name, "max_residual": residual, "tolerance": tol,
           "passed": bool(residual <= tol)}
    out.update(extra)
    return out


def _suite(name: str, checks: list) -> dict:
    return {
        "suite": name,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
        "max_residual": max((c["max_residual"] for c in checks), default=0.0),
    }


def _grid_points(chart, n: int = 64):
    g1 = chart.periods[0] * (np.arange(n) + 0.5) / n
    g2 = chart.periods[1] * (np.arange(n) + 0.5) / n
    return np.repeat(g1, n), np.tile(g2, n)


def _random_points(chart, rng, count: int):
    return (rng.uniform(0.0, chart.periods[0], count),
            rng.uniform(0.0, chart.periods[1], count))


def _random_point(chart, rng):
    return (float(rng.uniform(0.0, chart.periods[0])),
            float(rng.uniform(0.0, chart.periods[1])))


def _charts(j_max: int = 6):
    return [catalog_surface("clifford", j_max=j_max),
            catalog_surface("flat_torus", r=0.6, j_max=j_max)]


def _factors():
    return [ConformalFactor.constant(1.0),
            ConformalFactor.affine(1.3, AFFINE_B)]


def _jet_values(components) -> np.ndarray:
    return np.stack([c.value for c in components], axis=-1)


def _jet_max(components) -> float:
    return max(float(np.max(np.abs(c.c))) for c in components)


# -- frame suite ------------------------------------------------------

def suite_frame(grid: int = 64) -> dict:
    """Moving-frame derivative identities, frame Gram matrix and the
    closed-form second form of the sphere congruence, on full grids."""
    checks = []
    for chart in _charts():
        for factor in _factors():
            label = f"{chart.name}/{factor.kind}"
            pts = _grid_points(chart, grid)
            fs = conformal_frame(chart, factor, pts, 1)
            res = frame_derivative_residuals(fs)
            for key, comps in res.items():
                checks.append(_check(f"frame/{label}/{key}",
                                     _jet_max(comps), 1e-9))
            rows = [fs.y_l, fs.y_star,
                    None, None, fs.xi]
            inv_sqrt_m = fs.m.power(-0.5)
            xi_u = [[c.deriv(i) * inv_sqrt_m for c in fs.xi] for i in range(2)]
            rows[2], rows[3] = xi_u[0], xi_u[1]
            vals = np.stack([_jet_values(r) for r in rows], axis=-2)
            gram = np.einsum("...ik,kl,...jl->...ij", vals, _MDOT, vals)
            checks.append(_check(f"frame/{label}/gram",
                                 np.max(np.abs(gram - GRAM_TARGET)), 1e-9))
            closed = omega_star_closed_form(fs)
            dev = max(float(np.max(np.abs((closed[i][j] - fs.OmegaStar[i][j]).c)))
                      for i in range(2) for j in range(2))
            checks.append(_check(f"frame/{label}/second_form_closed", dev, 1e-9))
    return _suite("frame", checks)


# -- willmore suite ---------------------------------------------------

def suite_willmore() -> dict:
    """Mean-curvature statements: the sphere-congruence surface, the
    associate 4-surface, the ruled 3-surface, closed forms and the
    order-3/4/5 invariant oracles."""
    rng = np.random.default_rng(2024)
    checks = []
    cliff = catalog_surface("clifford", j_max=8)
    ft = catalog_surface("flat_torus", r=0.6, j_max=8)
    lam1 = ConformalFactor.constant(1.0)

    pts = _random_points(cliff, rng, 6)
    fs = conformal_frame(cliff, lam1, pts, 2)
    checks.append(_check("willmore/clifford/congruence_mean_curvature",
                         _jet_max(fs.H_xi), 1e-8))
    fs0 = conformal_frame(cliff, lam1, _random_point(cliff, rng), 4)
    worst = 0.0
    for alpha in (0.5, 1.0, 2.0):
        for rho in (0.0, 0.05, 0.1):
            h = ambient_jets(fs0, alpha, rho, 1)["Htilde"].value
            worst = max(worst, abs(float(h)))
    checks.append(_check("willmore/clifford/ambient_mean_curvature", worst, 1e-8))
    worst = 0.0
    for t in (-0.5, 0.0, 0.5):
        rf = ruled_surface_forms(fs0, t)
        worst = max(worst, abs(rf.Hplus), abs(rf.position_norm + 1.0))
    checks.append(_check("willmore/clifford/ruled_mean_curvature", worst, 1e-8))

    fs1 = conformal_frame(ft, lam1, _random_point(ft, rng), 4)
    h_direct = ambient_jets(fs1, 1.0, 0.1, 1)["Htilde"].value
    h_closed = htilde_jets(fs1, 1.0, 0.1, 1).value
    checks.append(_check("willmore/flat_torus/ambient_h_closed_form",
                         abs(h_direct - h_closed) / abs(h_closed), 1e-9,
                         lower_bound_ok=bool(abs(h_direct) >= 1e-2)))
    checks.append(_check("willmore/flat_torus/ambient_h_nonzero",
                         0.0 if abs(h_direct) >= 1e-2 else 1.0, 0.5))

    worst = 0.0
    for r in (0.5, 0.6, 0.7):
        s = np.sqrt(1.0 - r * r)
        expected = (s * s - r * r) / (4.0 * r ** 3 * s ** 3)
        chart = catalog_surface("flat_torus", r=r)
        fsr = conformal_frame(chart, lam1, _random_points(chart, rng, 5), 0)
        got = fsr.scriptH.value
        worst = max(worst, float(np.max(np.abs(got - expected)))
                    / abs(expected))
    checks.append(_check("willmore/flat_torus/operator_closed_form", worst, 1e-8))

    # order-3 invariant: direct ambient Laplacian of the closed-form mean
    # curvature equals 2 alpha^-3 scriptH
    fac = ConformalFactor.affine(1.3, AFFINE_B)
    fsl = conformal_frame(ft, fac, _random_point(ft, rng), 4)
    alpha = 1.3
    di = direct_invariants(fsl, alpha)
    expected = 2.0 * alpha ** -3 * float(fsl.scriptH.value)
    checks.append(_check("willmore/order3_oracle",
                         abs(di["laplace_H"] - expected) / abs(expected), 1e-6))
    # order-5 invariant: closed form vs two generic Laplacians
    si = surface_invariants(fsl)
    direct5 = double_laplace_direct(fsl, alpha)
    closed5 = 8.0 * float(si["dlap_willmore"]) / alpha ** 5
    checks.append(_check("willmore/order5_oracle",
                         abs(direct5 - closed5) / abs(direct5), 1e-5))
    # order-4 invariant: generic covariant contraction vs surface-data form
    worst = 0.0
    for chart in _charts(j_max=8):
        for factor in _factors():
            fsc = conformal_frame(chart, factor, _random_point(chart, rng), 4)
            cov = christoffels_and_covariant_h(fsc, 1.7)
            sic = surface_invariants(fsc)
            closed4 = float(sic["grad_form"]) / 1.7 ** 4
            worst = max(worst, abs(cov.grad_h_sq - closed4)
                        / max(1e-30, abs(cov.grad_h_sq)))
    checks.append(_check("willmore/order4_oracle", worst, 1e-6))

    # conformal transform: the dual of the Clifford torus is its antipode,
    # and the dual of the dual returns the original surface
    pts = _random_points(cliff, rng, 8)
    fsd = conformal_frame(cliff, lam1, pts, 0)
    xhat = _jet_values(fsd.y[1:])
    xstar = _jet_values(fsd.x_star)
    checks.append(_check("willmore/clifford/dual_antipodal",
                         np.max(np.abs(xstar + xhat)), 1e-12))
    flip = make_rotation(1, 2, np.pi) @ make_rotation(3, 4, np.pi)
    anti = catalog_surface("mobius_image", base=cliff, transform=flip)
    fsa = conformal_frame(anti, lam1, pts, 0)
    checks.append(_check("willmore/clifford/dual_involution",
                         np.max(np.abs(_jet_values(fsa.x_star) - xhat)), 1e-9))
    return _suite("willmore", checks)


# -- appendix A suite -------------------------------------------------

class _FrameSlice:
    """One sample of a batched frame, exposing the attributes the ambient
    jet routes read (all scalar Jet2)."""

    class _LJ:
        pass

    def __init__(self, fs, idx):
        from .jets import Jet2

        def take(j2):
            return Jet2(j2.c[idx], j2.order)

        for name in ("m", "omega_sq", "scriptH"):
            setattr(self, name, take(getattr(fs, name)))
        for name in ("y_l", "y_star", "xi"):
            setattr(self, name, [take(c) for c in getattr(fs, name)])
        self.omega = [take(c) for c in fs.omega]
        self.Omega = [[take(c) for c in row] for row in fs.Omega]
        self.OmegaStar = [[take(c) for c in row] for row in fs.OmegaStar]
        self.lj = self._LJ()
        self.lj.E = take(fs.lj.E)


def suite_appendixA(samples: int = 100) -> dict:
    """Block-formula inverse metric, determinant and the closed-form
    rho-derivative entries against generic jet computation."""
    rng = np.random.default_rng(41)
    w_inv = w_det = w_der = 0.0
    fac = ConformalFactor.affine(1.3, GENERIC_B)
    batches = []
    for chart in _charts(j_max=8):
        for factor in (ConformalFactor.constant(1.0), fac):
            pts = _random_points(chart, rng, (samples + 3) // 4)
            batches.append(conformal_frame(chart, factor, pts, 1))
    for k in range(samples):
        alpha = rng.uniform(0.5, 2.0)
        rho = rng.uniform(0.0, 0.08)
        fsu = _FrameSlice(batches[k % 4], k // 4)
        data = ambient_jets(fsu, alpha, rho, 1)
        Gi_block, sdet_block = appendix_inverse_jets(fsu, alpha, rho, 1)
        for a in range(4):
            for b in range(4):
                w_inv = max(w_inv, float(np.max(np.abs(
                    (Gi_block[a][b] - data["Ginv"][a][b]).c))))
        w_det = max(w_det, abs(sdet_block.value - data["sqrt_det"].value)
                    / abs(data["sqrt_det"].value))
        # rho-derivative entries of the inverse at rho = 0, closed form
        Gi0, _ = appendix_inverse_jets(fsu, alpha, 0.0, 2)
        E = float(fsu.lj.E.value)
        om = [float(fsu.omega[0].value), float(fsu.omega[1].value)]
        wsq = float(fsu.omega_sq.value)
        pairs = [
            (Gi0[1][0].coeff(0, 1, 0, 0), -2.0 * wsq / alpha),
            (Gi0[1][1].coeff(0, 1, 0, 0), 2.0 / alpha ** 2),
            (Gi0[1][2].coeff(0, 1, 0, 0), -2.0 / alpha ** 2 * om[0] / E),
            (Gi0[1][3].coeff(0, 1, 0, 0), -2.0 / alpha ** 2 * om[1] / E),
            (Gi0[1][1].coeff(0, 2, 0, 0) * 2.0, 8.0 * wsq / alpha ** 2),
        ]
        for got, want in pairs:
            w_der = max(w_der, abs(got - want) / max(1.0, abs(want)))
    return _suite("appendixA", [
        _check("appendixA/block_inverse", w_inv, 1e-9, samples=samples),
        _check("appendixA/determinant", w_det, 1e-9, samples=samples),
        _check("appendixA/rho_derivative_entries", w_der, 1e-8,
               samples=samples),
    ])


# -- appendix B suite -------------------------------------------------

def _ydag_point(x: np.ndarray, factor: ConformalFactor) -> np.ndarray:
    """Pointwise dual lift as a function of the position: batched (..., 4)
    positions of any dtype (complex steps included) -> (..., 5)."""
    bx = x @ factor.b
    lam = factor.a + bx
    g = (factor.b - bx[..., None] * x) / lam[..., None]
    gsq = np.sum(g * g, axis=-1)[..., None]
    out = np.empty(x.shape[:-1] + (5,), dtype=x.dtype)
    out[..., :1] = 0.5 * gsq + 0.5
    out[..., 1:] = (0.5 * gsq - 0.5) * x + g
    return out / lam[..., None]


def suite_appendixB(samples: int = 100) -> dict:
    """Curvature identities tying the dual lift to the Ricci tensor of the
    rescaled 3-sphere, checked pointwise for a non-constant factor."""
    rng = np.random.default_rng(43)
    w_nd = w_ij = w_u3 = w_cov = 0.0
    factors = [ConformalFactor.affine(1.3, AFFINE_B),
               ConformalFactor.affine(1.3, GENERIC_B)]
    for chart in _charts(j_max=6):
        for factor in factors:
            pts = _random_points(chart, rng, (samples + 3) // 4)
            fs = conformal_frame(chart, factor, pts, 1)
            curv = fs.lj.curv
            E = fs.lj.E.value
            n_l = _jet_values(fs.n_l)
            ydag_u = [np.stack([c.deriv(i).value for c in fs.y_dag], -1)
                      for i in range(2)]
            yl_u = [np.stack([c.deriv(i).value for c in fs.y_l], -1)
                    for i in range(2)]
            ric33 = curv.Ric_33.value
            kt = curv.K_T.value
            for i in range(2):
                got = np.einsum("...k,kl,...l->...", n_l, _MDOT, ydag_u[i])
                w_nd = max(w_nd, float(np.max(np.abs(
                    got + curv.Ric_3i[i].value))))
            for i in range(2):
                for j in range(2):
                    got = np.einsum("...k,kl,...l->...",
                                    yl_u[i], _MDOT, ydag_u[j])
                    want = -curv.R_i3j3[i][j].value
                    if i == j:
                        want = want + 0.5 * E * (ric33 - kt)
                    w_ij = max(w_ij, float(np.max(np.abs(got - want))))
            # normal-direction relation, on the surface only: the dual
            # lift is a pointwise function of position, so its derivative
            # along the unit normal is a directional derivative
            # (complex step)
            xhat = np.stack([c.value for c in fs.y[1:]], -1)
            nvec = np.stack([c.value for c in fs.lj.cj.n], -1)
            lam = fs.lam_hat.value
            h = 1e-30
            step = xhat + 1j * h * nvec / lam[..., None]
            ydag_u3 = np.imag(_ydag_point(step, factor)) / h
            got = np.einsum("...k,kl,...l->...", n_l, _MDOT, ydag_u3)
            w_u3 = max(w_u3, float(np.max(np.abs(
                got + 0.5 * (ric33 - kt)))))
            # covariant divergence of the mixed Ricci row reduces to the
            # plain coordinate divergence: the Christoffel sums vanish
            gam = isothermal_christoffels(fs.lj.E)
            full = sum(curv.Ric_3i[i].deriv(i).value
                       - sum(curv.Ric_3i[m].value * gam[m][i][i].value
                             for m in range(2))
                       for i in range(2)) / E
            w_cov = max(w_cov,
                        float(np.max(np.abs(full - curv.DivRic.value))),
                        max(float(np.max(np.abs(
                            sum(gam[m][i][i].value for i in range(2)))))
                            for m in range(2)))
    return _suite("appendixB", [
        _check("appendixB/normal_dual_ricci", w_nd, 1e-7, samples=samples),
        _check("appendixB/tangent_dual_curvature", w_ij, 1e-7,
               samples=samples),
        _check("appendixB/normal_direction_dual", w_u3, 1e-7,
               samples=samples),
        _check("appendixB/ricci_divergence_reduction", w_cov, 1e-7,
               samples=samples),
    ])


# -- conformal scaling suite ------------------------------------------

def suite_conformal_scaling() -> dict:
    """Conformal weights of the four surface invariants, alpha-homogeneity
    of every emitted invariant, and the constant-rescaling table."""
    checks = []
    fac = ConformalFactor.affine(1.3, AFFINE_B)
    expected = SURFACE_INVARIANT_ORDERS
    worst_exp = worst_fit = 0.0
    for chart in _charts(j_max=8):
        for name, k in expected.items():
            exponent, residual, vacuous = conformal_invariance_check(
                chart, fac, name)
            if vacuous:
                continue
            worst_exp = max(worst_exp, abs(exponent - k))
            worst_fit = max(worst_fit, residual)
    checks.append(_check("scaling/conformal_exponents", worst_exp, 0.01))
    checks.append(_check("scaling/conformal_fit_residual", worst_fit, 1e-6))

    rng = np.random.default_rng(5)
    chart = catalog_surface("flat_torus", r=0.6, j_max=8)
    fs = conformal_frame(chart, fac, _random_point(chart, rng), 4)
    worst = 0.0
    base = {r.name: r.value for r in invariant_suite(fs, 1.0)}
    for alpha in (0.5, 2.0, 4.0):
        recs = invariant_suite(fs, alpha)
        for r in recs:
            want = base[r.name] * alpha ** (-r.order)
            worst = max(worst, float(np.max(np.abs(r.value - want)))
                        / max(1e-30, float(np.max(np.abs(want)))))
    checks.append(_check("scaling/alpha_homogeneity", worst, 1e-10))

    # constant rescaling of the ambient metric: each invariant of order k
    # scales by kappa^-k
    base = direct_invariants(fs, 1.0, kappa=1.0)
    base["double_laplace_H"] = double_laplace_direct(fs, 1.0, kappa=1.0)
    worst = 0.0
    for kappa in (0.5, 2.0):
        vals = direct_invariants(fs, 1.0, kappa=kappa)
        vals["double_laplace_H"] = double_laplace_direct(fs, 1.0, kappa=kappa)
        vals["mean_curvature_k1"] = vals.pop("mean_curvature")
        ref = dict(base, mean_curvature_k1=base.get("mean_curvature"))
        orders = dict(ambient.INVARIANT_ORDERS, mean_curvature_k1=1)
        for name, k in orders.items():
            if name not in vals:
                continue
            want = ref[name] * kappa ** (-k)
            worst = max(worst, abs(vals[name] - want) / max(1e-30, abs(want)))
    checks.append(_check("scaling/constant_rescaling_table", worst, 1e-9))
    return _suite("conformal-scaling", checks)


# -- equivariance suite -----------------------------------------------

def suite_equivariance(maps: int = 20) -> dict:
    """Transformation laws of the frame under the isometry group of the
    Minkowski lift: the congruence map is linear, the dual lift picks up
    the light-cone normalisation weight, the dual surface is the
    projective image."""
    rng = np.random.default_rng(11)
    lam1 = ConformalFactor.constant(1.0)
    w_xi = w_ys = w_xs = 0.0
    charts = _charts()
    for k in range(maps):
        d = rng.normal(size=4)
        d /= np.linalg.norm(d)
        L = make_boost(d, rng.uniform(-1.0, 1.0))
        if k % 2:
            i, j = sorted(rng.choice(np.arange(1, 5), size=2, replace=False))
            L = L @ make_rotation(int(i), int(j), rng.uniform(0.0, np.pi))
        chart = charts[k % 2]
        img = catalog_surface("mobius_image", base=chart, transform=L)
        pts = _random_points(chart, rng, 4)
        fs0 = conformal_frame(chart, lam1, pts, 0)
        fs1 = conformal_frame(img, lam1, pts, 0)
        Lm = L.m
        y0 = _jet_values(fs0.y)
        mu = (y0 @ Lm.T)[..., 0]
        w_xi = max(w_xi, float(np.max(np.abs(
            _jet_values(fs1.xi) - _jet_values(fs0.xi) @ Lm.T))))
        ys_t = mu[..., None] * (_jet_values(fs0.y_star) @ Lm.T)
        w_ys = max(w_ys, float(np.max(np.abs(_jet_values(fs1.y_star) - ys_t))))
        lys = _jet_values(fs0.y_star) @ Lm.T
        w_xs = max(w_xs, float(np.max(np.abs(
            _jet_values(fs1.x_star) - lys[..., 1:] / lys[..., :1]))))
    return _suite("equivariance", [
        _check("equivariance/congruence_map", w_xi, 1e-9, maps=maps),
        _check("equivariance/dual_lift", w_ys, 1e-9, maps=maps),
        _check("equivariance/dual_surface", w_xs, 1e-9, maps=maps),
    ])


# -- integrability suite ----------------------------------------------

def suite_integrability(grid: int = 64) -> dict:
    """Compatibility identities of the first-order frame system on exact
    chart data, and detection of inconsistent perturbed data."""
    checks = []
    fac = ConformalFactor.affine(1.3, AFFINE_B)
    for chart in _charts():
        for factor in (ConformalFactor.constant(1.0), fac):
            data = ConformalData.from_chart(chart, factor, n1=grid, n2=grid)
            rep = integrability_residuals(data)
            checks.append(_check(
                f"integrability/{chart.name}/{factor.kind}",
                rep.max_residual, 1e-9))
    # detection: an inconsistent perturbation must raise the residuals
    # far above the exact-data level and induce path dependence
    chart = catalog_surface("clifford")
    data = ConformalData.from_chart(chart, ConformalFactor.constant(1.0),
                                    n1=grid, n2=grid)
    eps = 1e-4
    pert = data.perturbed("Omega", eps, (0, 0))
    rep = integrability_residuals(pert)
    checks.append(_check("integrability/perturbation_detected",
                         0.0 if rep.max_residual > 100.0 * eps * 1e-3 else 1.0,
                         0.5, perturbed_residual=rep.max_residual))
    dev = path_independence(pert, standard_seed(), integrability_tol=np.inf)
    checks.append(_check("integrability/perturbation_path_dependence",
                         0.0 if dev > 1e-4 else 1.0, 0.5,
                         path_deviation=float(dev)))
    return _suite("integrability", checks)


# -- reconstruction suite ---------------------------------------------

def _roundtrip(chart, factor, grid: int, method: str = "magnus") -> dict:
    data = ConformalData.from_chart(chart, factor, n1=grid, n2=grid)
    seed = seed_from_frame(data, (0, 0))
    ff = integrate_structure_equations(data, seed, "rows-then-columns",
                                       method=method)
    other = integrate_structure_equations(data, seed, "columns-then-rows",
                                          method=method)
    dev = float(np.max(np.abs(ff.frames - other.frames)))
    sf = extract_surface(ff)
    got = surface_invariant_fields(sf)
    ref = surface_invariant_fields(chart_surface_field(chart, factor, data.grid))
    inv_dev = {k: float(np.max(np.abs(got[k] - ref[k]))
                        / max(1.0, float(np.max(np.abs(ref[k])))))
               for k in ref}
    return {"gram_drift": float(ff.gram_drift), "path_dev": float(dev),
            "invariant_dev": inv_dev, "frame_field": ff, "data": data,
            "seed": seed}


def suite_reconstruction(grid: int = 64) -> dict:
    """Round trip: exact invariant data -> frame integration -> surface ->
    invariants, plus seed equivariance of the invariant report."""
    checks = []
    fac = ConformalFactor.affine(1.3, AFFINE_B)
    base = None
    for chart in _charts():
        for factor in (ConformalFactor.constant(1.0), fac):
            label = f"{chart.name}/{factor.kind}"
            out = _roundtrip(chart, factor, grid)
            checks.append(_check(f"reconstruction/{label}/gram_drift",
                                 out["gram_drift"], 1e-6))
            checks.append(_check(f"reconstruction/{label}/path_independence",
                                 out["path_dev"], 1e-5))
            checks.append(_check(
                f"reconstruction/{label}/invariant_deviation",
                max(out["invariant_dev"].values()), 1e-5,
                per_invariant=out["invariant_dev"]))
            if base is None:
                base = out
    # a rotated/boosted seed must reproduce the identical invariant report
    L = make_rotation(2, 4, 0.7) @ make_boost(np.array([1.0, 0, 0, 0]), 0.4)
    data, seed = base["data"], base["seed"]
    ref = surface_invariant_fields(extract_surface(base["frame_field"]))
    moved = surface_invariant_fields(extract_surface(
        integrate_structure_equations(data, transform_seed(seed, L),
                                      "rows-then-columns", method="magnus")))
    dev = max(float(np.max(np.abs(ref[k] - moved[k]))) for k in ref)
    checks.append(_check("reconstruction/seed_equivariance", dev, 1e-9))
    return _suite("reconstruction", checks)


SUITES = {
    "frame": suite_frame,
    "integrability": suite_integrability,
    "appendixA": suite_appendixA,
    "appendixB": suite_appendixB,
    "conformal-scaling": suite_conformal_scaling,
    "equivariance": suite_equivariance,
    "willmore": suite_willmore,
    "reconstruction": suite_reconstruction,
}


def run_suite(name: str) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {sorted(SUITES)}")
    return SUITES[name]()
