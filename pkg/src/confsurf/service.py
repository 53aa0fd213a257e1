"""Typed run configuration, result records and the operations behind the
command line and the HTTP service.

All heavy lifting lives in the core modules; this layer validates input,
orchestrates grid evaluation and produces deterministic, fingerprinted
reports (JSON documents / CSV rows with stable ordering).
"""
from __future__ import annotations

import hashlib
import io
import json
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from . import ambient
from .ambient import (
    surface_invariants, SURFACE_INVARIANT_ORDERS, INVARIANT_ORDERS,
)
from .errors import (
    ConfigError, UmbilicPointError, DegenerateAmbientError,
)
from .frame import conformal_frame
from .mink5 import make_boost, make_rotation, LorentzMap
from .reconstruction import (
    ConformalData, GridSpec, integrability_residuals, standard_seed,
    seed_from_frame, transform_seed, integrate_structure_equations,
    path_independence, extract_surface, surface_invariant_fields,
    chart_surface_field, compare_modulo_mobius,
)
from .surfaces import catalog_surface, ConformalFactor, SurfaceChart
from .verify import SUITES

__all__ = [
    "SurfaceSpec", "LambdaSpec", "GridConfig", "OutputSpec", "RunConfig",
    "ResultSet", "run_compute", "run_check", "run_reconstruct",
    "catalog_listing", "build_chart", "build_factor", "parse_seed_transform",
    "results_to_csv", "UMBILIC_FLOOR",
]

UMBILIC_FLOOR = 1e-10

# immersion jet order needed per surface invariant: the order-4 and
# order-5 scalars consume one and two derivatives of the Willmore
# operator on top of its own four
_INVARIANT_MIN_JET = {"normII2": 4, "willmore": 4,
                      "grad_form": 5, "dlap_willmore": 6}


class SurfaceSpec(BaseModel):
    kind: str
    params: dict = Field(default_factory=dict)

    @field_validator("kind")
    @classmethod
    def _known(cls, v):
        if v not in ("clifford", "flat_torus"):
            raise ValueError("surface kind must be clifford or flat_torus")
        return v


class LambdaSpec(BaseModel):
    kind: str = "constant"
    params: dict = Field(default_factory=dict)

    @field_validator("kind")
    @classmethod
    def _known(cls, v):
        if v not in ("constant", "affine"):
            raise ValueError("lambda kind must be constant or affine")
        return v


class GridConfig(BaseModel):
    nu: int = 64
    nv: int = 64
    u_range: Optional[tuple[float, float]] = None
    v_range: Optional[tuple[float, float]] = None
    periodic: tuple[bool, bool] = (True, True)

    @field_validator("nu", "nv")
    @classmethod
    def _size(cls, v):
        if v < 8:
            raise ValueError("grid sizes must be at least 8")
        return v


class OutputSpec(BaseModel):
    path: Optional[str] = None
    format: str = "json"

    @field_validator("format")
    @classmethod
    def _fmt(cls, v):
        if v not in ("json", "csv"):
            raise ValueError("output format must be json or csv")
        return v


class RunConfig(BaseModel):
    surface: SurfaceSpec = Field(default_factory=lambda: SurfaceSpec(kind="clifford"))
    lambda_: LambdaSpec = Field(default_factory=LambdaSpec, alias="lambda")
    grid: GridConfig = Field(default_factory=GridConfig)
    jet_order: int = 6
    points: list[tuple[float, float]] = Field(default_factory=lambda: [(1.0, 0.0)])
    invariants: list[str] = Field(
        default_factory=lambda: sorted(SURFACE_INVARIANT_ORDERS))
    tolerances: dict[str, float] = Field(default_factory=dict)
    output: OutputSpec = Field(default_factory=OutputSpec)

    model_config = {"populate_by_name": True}

    @field_validator("jet_order")
    @classmethod
    def _jet(cls, v):
        if not 3 <= v <= 6:
            raise ValueError("jet_order must lie in [3, 6]")
        return v

    @field_validator("tolerances")
    @classmethod
    def _tols(cls, v):
        for name, tol in v.items():
            if not tol > 0:
                raise ValueError(f"tolerance {name!r} must be positive")
        return v

    @field_validator("invariants")
    @classmethod
    def _invs(cls, v):
        for name in v:
            if name not in SURFACE_INVARIANT_ORDERS:
                raise ValueError(
                    f"unknown invariant {name!r}; "
                    f"known: {sorted(SURFACE_INVARIANT_ORDERS)}")
        return v

    @model_validator(mode="after")
    def _jet_covers_invariants(self):
        for name in self.invariants:
            if self.jet_order < _INVARIANT_MIN_JET[name]:
                raise ValueError(
                    f"invariant {name!r} needs jet_order >= "
                    f"{_INVARIANT_MIN_JET[name]}")
        return self

    def fingerprint(self) -> str:
        doc = json.dumps(self.model_dump(by_alias=True), sort_keys=True,
                         separators=(",", ":"))
        return hashlib.sha256(doc.encode()).hexdigest()


def load_config(text: str) -> RunConfig:
    try:
        doc = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    try:
        return RunConfig.model_validate(doc)
    except Exception as exc:
        raise ConfigError(str(exc))


def build_chart(spec: SurfaceSpec, j_max: int = 6) -> SurfaceChart:
    try:
        if spec.kind == "flat_torus":
            return catalog_surface("flat_torus",
                                   r=float(spec.params.get("r", 0.6)),
                                   j_max=j_max)
        return catalog_surface("clifford", j_max=j_max)
    except ValueError as exc:
        raise ConfigError(str(exc))


def build_factor(spec: LambdaSpec) -> ConformalFactor:
    try:
        if spec.kind == "affine":
            return ConformalFactor.affine(float(spec.params.get("a", 1.3)),
                                          spec.params.get("b", [0.2, 0, 0, 0]))
        return ConformalFactor.constant(float(spec.params.get("c", 1.0)))
    except ValueError as exc:
        raise ConfigError(str(exc))


def parse_seed_transform(text: Optional[str]) -> Optional[LorentzMap]:
    """``boost:dir,rapidity`` (dir in 1..4) or ``rotation:i,j,angle``."""
    if not text:
        return None
    try:
        kind, _, rest = text.partition(":")
        parts = [p for p in rest.split(",") if p]
        if kind == "boost":
            direction = np.zeros(4)
            direction[int(parts[0]) - 1] = 1.0
            return make_boost(direction, float(parts[1]))
        if kind == "rotation":
            return make_rotation(int(parts[0]), int(parts[1]),
                                 float(parts[2]))
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"bad seed transform {text!r}: {exc}")
    raise ConfigError(f"unknown seed transform kind in {text!r}")


class ResultSet(BaseModel):
    fingerprint: str
    kind: str
    grid: dict
    records: list[dict]
    summary: dict


# -- compute ----------------------------------------------------------

def _grid_nodes(chart: SurfaceChart, grid: GridConfig):
    u_range = grid.u_range or (0.0, chart.periods[0])
    v_range = grid.v_range or (0.0, chart.periods[1])
    endpoint_u = not grid.periodic[0]
    endpoint_v = not grid.periodic[1]
    g1 = np.linspace(u_range[0], u_range[1], grid.nu, endpoint=endpoint_u)
    g2 = np.linspace(v_range[0], v_range[1], grid.nv, endpoint=endpoint_v)
    return np.repeat(g1, grid.nv), np.tile(g2, grid.nu)


def run_compute(config: RunConfig) -> ResultSet:
    """Evaluate classical/conformal scalars and the requested invariants on
    the grid, row-major, with deterministic record ordering."""
    chart = build_chart(config.surface, j_max=config.jet_order)
    factor = build_factor(config.lambda_)
    pts = _grid_nodes(chart, config.grid)
    order = max(0, config.jet_order - 4)
    fs = conformal_frame(chart, factor, pts, order)

    det_om = fs.lj.det_Omega.value
    bad = np.abs(det_om) < UMBILIC_FLOOR
    if np.any(bad):
        k = int(np.argmax(bad))
        raise UmbilicPointError(
            f"umbilic point on the grid at (u1, u2) = "
            f"({pts[0][k]:.6f}, {pts[1][k]:.6f})")

    si = surface_invariants(fs)
    # closed-form ambient mean curvature at the requested (alpha, rho)
    # points; guard the degeneracy locus of the reduced-block determinant
    trOmOs = sum(fs.Omega[i][j].value * fs.OmegaStar[i][j].value
                 for i in range(2) for j in range(2))
    det_os = (fs.OmegaStar[0][0].value * fs.OmegaStar[1][1].value
              - fs.OmegaStar[0][1].value * fs.OmegaStar[1][0].value)
    ambient_rows = []
    for alpha, rho in config.points:
        if alpha <= 0 or rho < 0:
            raise ConfigError("points need alpha > 0 and rho >= 0")
        den = det_om - rho * trOmOs + rho * rho * det_os
        if np.min(np.abs(den)) < ambient.DEGENERACY_FLOOR:
            raise DegenerateAmbientError(
                f"(alpha, rho) = ({alpha:g}, {rho:g}) lies on the "
                "degeneracy locus of the associate surface")
        htilde = rho * det_om * fs.scriptH.value / (alpha * den)
        ambient_rows.append((alpha, rho, htilde))

    names = sorted(config.invariants)
    e = fs.lj.E.value
    columns = {
        "u1": pts[0], "u2": pts[1],
        "E": e, "H": fs.lj.H.value, "K": fs.lj.cj.K.value,
        "normIIo2": fs.lj.norm_IIo_sq.value,
        "m": fs.m.value, "scriptH": fs.scriptH.value,
        "a": fs.a_param.value,
    }
    for name in names:
        for alpha, rho in config.points:
            k = SURFACE_INVARIANT_ORDERS[name]
            columns[f"{name}@alpha={alpha:g}"] = si[name] / alpha ** k
    for alpha, rho, htilde in ambient_rows:
        columns[f"Htilde@alpha={alpha:g};rho={rho:g}"] = htilde

    records = []
    for k in range(len(pts[0])):
        records.append({key: float(val[k]) if np.ndim(val) else float(val)
                        for key, val in columns.items()})
    summary = {
        "invariant_orders": {n: SURFACE_INVARIANT_ORDERS[n] for n in names},
        "field_stats": {key: {"max": float(np.max(val)),
                              "mean": float(np.mean(val))}
                        for key, val in columns.items()
                        if key not in ("u1", "u2")},
    }
    return ResultSet(fingerprint=config.fingerprint(), kind="compute",
                     grid={"nu": config.grid.nu, "nv": config.grid.nv,
                           "order": "row-major"},
                     records=records, summary=summary)


# -- check ------------------------------------------------------------

def run_check(suite: str, config: Optional[RunConfig] = None) -> dict:
    """Run one named identity suite; tolerance overrides come from
    config.tolerances keyed by check name."""
    if suite not in SUITES:
        raise ConfigError(
            f"unknown suite {suite!r}; available: {sorted(SUITES)}")
    report = SUITES[suite]()
    overrides = config.tolerances if config is not None else {}
    for check in report["checks"]:
        if check["name"] in overrides:
            check["tolerance"] = overrides[check["name"]]
            check["passed"] = bool(check["max_residual"] <= check["tolerance"])
    report["passed"] = all(c["passed"] for c in report["checks"])
    if config is not None:
        report["fingerprint"] = config.fingerprint()
    return report


# -- reconstruct ------------------------------------------------------

def run_reconstruct(config: RunConfig, data: Optional[ConformalData] = None,
                    seed_transform: Optional[LorentzMap] = None) -> dict:
    """Rebuild the surface from conformal data (chart-derived by default,
    tabulated if ``data`` is given) and report the round trip."""
    chart = factor = None
    if data is None:
        chart = build_chart(config.surface)
        factor = build_factor(config.lambda_)
        grid = GridSpec.for_periods(config.grid.nu, config.grid.nv,
                                    chart.periods)
        data = ConformalData.from_chart(chart, factor, grid=grid)
        seed = seed_from_frame(data, (0, 0))
    else:
        seed = standard_seed()
    if seed_transform is not None:
        seed = transform_seed(seed, seed_transform)

    rep = integrability_residuals(data)
    ff = integrate_structure_equations(data, seed, method="magnus")
    dev = path_independence(data, seed, method="magnus")
    sf = extract_surface(ff)
    fields = surface_invariant_fields(sf)
    out = {
        "fingerprint": config.fingerprint(),
        "kind": "reconstruct",
        "grid": data.grid.to_dict(),
        "integrability": {"max_residual": rep.max_residual,
                          "residuals": {k: float(v)
                                        for k, v in rep.residuals.items()}},
        "gram_drift": float(ff.gram_drift),
        "path_independence": float(dev),
        "sphere_defect": float(sf.sphere_defect),
        "invariant_report": {k: {"max": float(np.max(v)),
                                 "mean": float(np.mean(v))}
                             for k, v in sorted(fields.items())},
        "x_hat": sf.x_hat.tolist(),
        "lam_hat": sf.lam_hat.tolist(),
    }
    if chart is not None:
        ref = chart_surface_field(chart, factor, data.grid)
        comparison = compare_modulo_mobius(sf, ref)
        out["comparison"] = {
            "deviations": {k: float(v)
                           for k, v in sorted(comparison.deviations.items())},
            "max_deviation": float(comparison.max_deviation),
        }
    return out


# -- catalog ----------------------------------------------------------

def catalog_listing() -> dict:
    """Stable, sorted listing of surfaces, factor kinds, invariants and
    check suites."""
    invariants = [f"{name}: order {order}"
                  for name, order in sorted(SURFACE_INVARIANT_ORDERS.items())]
    ambient_records = [f"{name}: order {order}"
                       for name, order in sorted(INVARIANT_ORDERS.items())]
    return {
        "surfaces": ["clifford", "flat_torus(r), 0 < r < 1",
                     "mobius_image(base, transform)"],
        "lambda_kinds": ["affine(a, b), a > |b|", "constant(c), c > 0"],
        "invariants": invariants,
        "ambient_records": ambient_records,
        "suites": sorted(SUITES),
    }


# -- serialization ----------------------------------------------------

def results_to_csv(rs: ResultSet) -> str:
    """One row per grid point, stable column order, fingerprint in a
    leading comment line."""
    buf = io.StringIO()
    buf.write(f"# fingerprint={rs.fingerprint}\n")
    if not rs.records:
        return buf.getvalue()
    cols = list(rs.records[0].keys())
    buf.write(",".join(cols) + "\n")
    for rec in rs.records:
        buf.write(",".join(repr(rec[c]) for c in cols) + "\n")
    return buf.getvalue()
