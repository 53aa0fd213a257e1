"""Integrability residuals for conformal surface data and reconstruction of
the surface from that data by integrating the moving-frame structure
equations.

The data of an umbilic-free surface in the conformal 3-sphere, up to Mobius
transformation, is the quadruple on a parameter domain

    m  (positive function),   omega  (1-form),
    Omega  (traceless symmetric 2-tensor),   Omega*  (symmetric 2-tensor).

Six first-order identities on the quadruple (two for Omega, two for Omega*,
one mixed curl identity and one Gauss identity) are exactly the condition
that the linear systems

    d/du^i [y, y*, xi_u1/sqrt(m), xi_u2/sqrt(m), xi] = B_i [ ... ]

commute, i.e. that a frame field with the prescribed coefficients exists.
This module evaluates those residuals, integrates the two systems with a
classic 4th-order single-step scheme, extracts the surface x-hat and its
scale factor lambda-hat from the null frame row y = lambda-hat (1, x-hat),
and compares reconstructions through Mobius-invariant fields only.

Conventions for the structure matrices B_1, B_2 (frame rows ordered
[y, y*, xi-hat_1, xi-hat_2, xi], xi-hat_i = xi_{u^i}/sqrt(m)):

    B_i rows y   : [-omega_i, 0, -Omega_i1/sqrt(m), -Omega_i2/sqrt(m), 0]
    B_i rows y*  : [0, +omega_i, -Omega*_i1/sqrt(m), -Omega*_i2/sqrt(m), 0]
    B_1 row xi-hat_1: [-Omega*_11/sqrt(m), -Omega_11/sqrt(m), 0, -m_{u2}/2m, -sqrt(m)]
    B_1 row xi-hat_2: [-Omega*_12/sqrt(m), -Omega_12/sqrt(m), +m_{u2}/2m, 0, 0]
    B_2 row xi-hat_1: [-Omega*_21/sqrt(m), -Omega_21/sqrt(m), 0, +m_{u1}/2m, 0]
    B_2 row xi-hat_2: [-Omega*_22/sqrt(m), -Omega_22/sqrt(m), -m_{u1}/2m, 0, -sqrt(m)]
    B_1 row xi  : [0, 0, sqrt(m), 0, 0];  B_2 row xi: [0, 0, 0, sqrt(m), 0]

Every entry is derived from the null-basis expansion
v = -<v,y*> y - <v,y> y* + sum <v, xi-hat_j> xi-hat_j + <v, xi> xi and is
verified numerically against exact frames (see the frame test suite).

The starred Codazzi identities carry a trace correction term; the curl of
the structure matrices fixes it uniquely as

    Omega*_{11,2} - Omega*_{12,1} = -omega_1 Omega*_12 + omega_2 Omega*_11
                                    + (tr Omega*) (log m)_{u2} / 2
    Omega*_{12,2} - Omega*_{22,1} = -omega_1 Omega*_22 + omega_2 Omega*_12
                                    - (tr Omega*) (log m)_{u1} / 2

(note the opposite index and sign of the two correction terms).  Two other
candidate corrections that replace (log m)' by (log |Omega|^2)' with either
index are evaluated as diagnostics on request; neither vanishes on generic
chart data, and both coincide with the canonical form when m is constant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, GramDriftError, IntegrabilityError
from .frame import FrameState, conformal_frame
from .mink5 import ETA, LorentzMap
from .surfaces import ConformalFactor, SurfaceChart

__all__ = [
    "GridSpec", "ConformalData", "IntegrabilityReport", "FrameField",
    "SurfaceField", "MobiusComparison", "integrability_residuals",
    "standard_seed", "seed_from_frame", "transform_seed",
    "integrate_structure_equations", "path_independence", "extract_surface",
    "surface_invariant_fields", "compare_modulo_mobius", "chart_surface_field",
    "GRAM_TARGET",
]

# Gram matrix of the frame rows [y, y*, xi-hat_1, xi-hat_2, xi] under the
# Minkowski form: <y,y*> = -1, unit middle rows, all other pairings zero.
GRAM_TARGET = np.array([
    [0.0, -1.0, 0.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, 1.0],
])


# ---------------------------------------------------------------------------
# grids and finite differences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """Rectangular parameter grid: n1 x n2 nodes with spacings (h1, h2).

    For a periodic axis the nodes cover one full period [0, n*h) with the
    endpoint excluded (node n wraps to node 0)."""
    n1: int
    n2: int
    h1: float
    h2: float
    origin: tuple = (0.0, 0.0)
    periodic: tuple = (True, True)

    def __post_init__(self):
        if self.n1 < 8 or self.n2 < 8:
            raise ConfigError("grid must have at least 8 nodes per axis")
        if self.h1 <= 0 or self.h2 <= 0:
            raise ConfigError("grid spacings must be positive")

    @staticmethod
    def for_periods(n1: int, n2: int, periods) -> "GridSpec":
        return GridSpec(n1, n2, periods[0] / n1, periods[1] / n2)

    @property
    def shape(self):
        return (self.n1, self.n2)

    def axis_nodes(self, axis: int) -> np.ndarray:
        n, h = (self.n1, self.h1) if axis == 0 else (self.n2, self.h2)
        return self.origin[axis] + h * np.arange(n)

    def nodes(self):
        return np.meshgrid(self.axis_nodes(0), self.axis_nodes(1),
                           indexing="ij")

    def to_dict(self) -> dict:
        return {"n1": self.n1, "n2": self.n2, "h1": self.h1, "h2": self.h2,
                "origin": list(self.origin), "periodic": list(self.periodic)}

    @staticmethod
    def from_dict(d: dict) -> "GridSpec":
        return GridSpec(int(d["n1"]), int(d["n2"]), float(d["h1"]),
                        float(d["h2"]), tuple(d.get("origin", (0.0, 0.0))),
                        tuple(bool(p) for p in d.get("periodic", (True, True))))


def _fd_matrix(n: int, h: float) -> np.ndarray:
    """4th-order first-derivative matrix with one-sided boundary stencils."""
    d = np.zeros((n, n))
    c = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12.0 * h)
    for i in range(2, n - 2):
        d[i, i - 2:i + 3] = c
    edge = np.array([
        [-25.0, 48.0, -36.0, 16.0, -3.0],
        [-3.0, -10.0, 18.0, -6.0, 1.0],
    ]) / (12.0 * h)
    d[0, :5] = edge[0]
    d[1, :5] = edge[1]
    d[-1, -5:] = -edge[0][::-1]
    d[-2, -5:] = -edge[1][::-1]
    return d


def fd_derivative(table: np.ndarray, axis: int, grid: GridSpec) -> np.ndarray:
    """4th-order central differences; periodic wrap or one-sided stencils."""
    h = grid.h1 if axis == 0 else grid.h2
    if grid.periodic[axis]:
        r = lambda k: np.roll(table, -k, axis=axis)
        return (r(-2) - 8.0 * r(-1) + 8.0 * r(1) - r(2)) / (12.0 * h)
    d = _fd_matrix(table.shape[axis], h)
    return np.moveaxis(np.tensordot(d, np.moveaxis(table, axis, 0), axes=1),
                       0, axis)


def _wavenumbers(n: int, h: float) -> np.ndarray:
    return 2.0 * np.pi * np.fft.rfftfreq(n, d=h)


def spectral_derivative(table: np.ndarray, axis: int, grid: GridSpec) -> np.ndarray:
    """Exact derivative of the trigonometric interpolant (periodic axis)."""
    if not grid.periodic[axis]:
        return fd_derivative(table, axis, grid)
    n = table.shape[axis]
    h = grid.h1 if axis == 0 else grid.h2
    k = _wavenumbers(n, h)
    fac = 1j * k
    if n % 2 == 0:
        fac = fac.copy()
        fac[-1] = 0.0  # odd derivative of the Nyquist mode has no real part
    f = np.fft.rfft(table, axis=axis)
    shape = [1] * table.ndim
    shape[axis] = f.shape[axis]
    return np.fft.irfft(f * fac.reshape(shape), n=n, axis=axis)


def _frac_shift(table: np.ndarray, axis: int, grid: GridSpec,
                frac: float) -> np.ndarray:
    """Trigonometric interpolation of a periodic table onto the grid shifted
    by ``frac`` of one spacing along ``axis``."""
    if not grid.periodic[axis]:
        raise ConfigError("sub-step interpolation requires a periodic axis")
    n = table.shape[axis]
    h = grid.h1 if axis == 0 else grid.h2
    k = _wavenumbers(n, h)
    ph = np.exp(1j * k * (frac * h))
    if n % 2 == 0:
        ph = ph.copy()
        ph[-1] = np.cos(k[-1] * frac * h)
    f = np.fft.rfft(table, axis=axis)
    shape = [1] * table.ndim
    shape[axis] = f.shape[axis]
    return np.fft.irfft(f * ph.reshape(shape), n=n, axis=axis)


# ---------------------------------------------------------------------------
# conformal data
# ---------------------------------------------------------------------------

_FIELD_NAMES = ("m", "w1", "w2", "O11", "O12", "O22", "S11", "S12", "S22")


@dataclass
class ConformalData:
    """The reconstruction data (m, omega, Omega, Omega*) on a grid.

    ``source`` is "chart" when the fields come from an immersed chart (all
    derivatives are then exact jets) or "tabulated" (derivatives by 4th-order
    finite differences, periodic wrap on periodic axes)."""
    grid: GridSpec
    tables: dict
    source: str = "tabulated"
    chart: SurfaceChart | None = None
    factor: ConformalFactor | None = None
    _frame: FrameState | None = field(default=None, repr=False)

    def __post_init__(self):
        for name in _FIELD_NAMES:
            if name not in self.tables:
                raise ConfigError(f"conformal data is missing field '{name}'")
            t = np.asarray(self.tables[name], dtype=float)
            if t.shape != self.grid.shape:
                raise ConfigError(
                    f"field '{name}' has shape {t.shape}, expected {self.grid.shape}")
            self.tables[name] = t
        if np.min(self.tables["m"]) <= 0.0:
            raise ConfigError("conformal data requires m > 0 everywhere")
        tr = np.max(np.abs(self.tables["O11"] + self.tables["O22"]))
        if tr > 1e-10:
            raise ConfigError(f"Omega must be traceless (max |tr| = {tr:.2e})")

    # -- constructors --------------------------------------------------

    @staticmethod
    def from_chart(chart: SurfaceChart, factor: ConformalFactor,
                   grid: GridSpec | None = None, n1: int = 64,
                   n2: int = 64) -> "ConformalData":
        if grid is None:
            grid = GridSpec.for_periods(n1, n2, chart.periods)
        fs = conformal_frame(chart, factor, grid.nodes(), order=1)
        tables = {
            "m": fs.m.value, "w1": fs.omega[0].value, "w2": fs.omega[1].value,
            "O11": fs.Omega[0][0].value, "O12": fs.Omega[0][1].value,
            "O22": fs.Omega[1][1].value, "S11": fs.OmegaStar[0][0].value,
            "S12": fs.OmegaStar[0][1].value, "S22": fs.OmegaStar[1][1].value,
        }
        return ConformalData(grid, tables, source="chart", chart=chart,
                             factor=factor, _frame=fs)

    def perturbed(self, name: str, delta: float,
                  entry: tuple = (0, 0)) -> "ConformalData":
        """Tabulated copy with one field uniformly shifted by ``delta``.

        ``name`` in {m, omega, Omega, OmegaStar}; ``entry`` selects the
        component.  Omega perturbations shift the (0,0)/(1,1) pair opposite
        ways to keep the trace zero."""
        tables = {k: v.copy() for k, v in self.tables.items()}
        if name == "m":
            tables["m"] += delta
        elif name == "omega":
            tables["w1" if entry[0] == 0 else "w2"] += delta
        elif name == "Omega":
            if entry[0] == entry[1]:
                tables["O11"] += delta if entry[0] == 0 else -delta
                tables["O22"] -= delta if entry[0] == 0 else -delta
            else:
                tables["O12"] += delta
        elif name == "OmegaStar":
            key = {(0, 0): "S11", (0, 1): "S12", (1, 0): "S12",
                   (1, 1): "S22"}[tuple(entry)]
            tables[key] += delta
        else:
            raise ConfigError(f"unknown field '{name}'")
        return ConformalData(self.grid, tables, source="tabulated")

    # -- derivatives ---------------------------------------------------

    def derivative(self, name: str, axis: int) -> np.ndarray:
        if self.source == "chart":
            jet = self._chart_jet(name)
            return jet.deriv(axis).value
        return fd_derivative(self.tables[name], axis, self.grid)

    def second_derivative(self, name: str, ax1: int, ax2: int) -> np.ndarray:
        if self.source == "chart":
            return self._chart_jet(name).deriv(ax1).deriv(ax2).value
        return fd_derivative(self.derivative(name, ax1), ax2, self.grid)

    def _chart_jet(self, name: str):
        fs = self._frame
        jets = {"m": fs.m, "w1": fs.omega[0], "w2": fs.omega[1],
                "O11": fs.Omega[0][0], "O12": fs.Omega[0][1],
                "O22": fs.Omega[1][1], "S11": fs.OmegaStar[0][0],
                "S12": fs.OmegaStar[0][1], "S22": fs.OmegaStar[1][1]}
        return jets[name]

    # -- serialization (row-major JSON arrays + grid metadata header) ---

    def to_json(self) -> str:
        doc = {"format": "conformal-data/1", "grid": self.grid.to_dict(),
               "order": "row-major",
               "fields": {k: [float(x) for x in self.tables[k].ravel()]
                          for k in _FIELD_NAMES}}
        return json.dumps(doc, indent=1, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "ConformalData":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"conformal data is not valid JSON: {exc}")
        if doc.get("format") != "conformal-data/1":
            raise ConfigError("unrecognized conformal data format")
        grid = GridSpec.from_dict(doc["grid"])
        tables = {}
        for name in _FIELD_NAMES:
            if name not in doc["fields"]:
                raise ConfigError(f"conformal data is missing field '{name}'")
            tables[name] = np.array(doc["fields"][name],
                                    dtype=float).reshape(grid.shape)
        return ConformalData(grid, tables, source="tabulated")


# ---------------------------------------------------------------------------
# integrability residuals
# ---------------------------------------------------------------------------

@dataclass
class IntegrabilityReport:
    """Max-norm residuals of the six integrability identities, with the full
    residual fields and the diagnostic starred-correction variants."""
    residuals: dict
    fields: dict
    star_variants: dict
    vanishing_variant: str

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())


def integrability_residuals(data: ConformalData) -> IntegrabilityReport:
    t = data.tables
    m, w1, w2 = t["m"], t["w1"], t["w2"]
    O11, O12, O22 = t["O11"], t["O12"], t["O22"]
    S11, S12, S22 = t["S11"], t["S12"], t["S22"]
    d = data.derivative
    trS = S11 + S22
    logm_1 = d("m", 0) / m
    logm_2 = d("m", 1) / m

    fields = {
        "codazzi_y_1": d("O11", 1) - d("O12", 0) - (w1 * O12 - w2 * O11),
        "codazzi_y_2": d("O12", 1) - d("O22", 0) - (w1 * O22 - w2 * O12),
        "codazzi_y_star_1": (d("S11", 1) - d("S12", 0)
                             - (-w1 * S12 + w2 * S11)
                             - 0.5 * trS * logm_2),
        "codazzi_y_star_2": (d("S12", 1) - d("S22", 0)
                             - (-w1 * S22 + w2 * S12)
                             + 0.5 * trS * logm_1),
        "codazzi_mix": (d("w1", 1) - d("w2", 0)
                        - ((O11 - O22) * S12 - (S11 - S22) * O12) / m),
    }
    lap_log_m = (data.second_derivative("m", 0, 0)
                 + data.second_derivative("m", 1, 1)) / m \
        - (logm_1 ** 2 + logm_2 ** 2)
    K = -lap_log_m / (2.0 * m)
    trOmS = O11 * S11 + 2.0 * O12 * S12 + O22 * S22
    fields["gauss"] = (K - 1.0) - trOmS / (m * m)

    residuals = {k: float(np.max(np.abs(v))) for k, v in fields.items()}

    # Diagnostic variants of the starred correction term: (log |Omega|^2)'
    # with either index in place of the canonical (log m)' form.
    nO2 = O11 ** 2 + 2.0 * O12 ** 2 + O22 ** 2
    dn1 = (2.0 * O11 * d("O11", 0) + 4.0 * O12 * d("O12", 0)
           + 2.0 * O22 * d("O22", 0))
    dn2 = (2.0 * O11 * d("O11", 1) + 4.0 * O12 * d("O12", 1)
           + 2.0 * O22 * d("O22", 1))
    base_1 = d("S11", 1) - d("S12", 0) - (-w1 * S12 + w2 * S11)
    base_2 = d("S12", 1) - d("S22", 0) - (-w1 * S22 + w2 * S12)
    star_variants = {
        "canonical": max(residuals["codazzi_y_star_1"],
                         residuals["codazzi_y_star_2"]),
        "norm_sq_u2_both": float(max(
            np.max(np.abs(base_1 - 0.5 * trS * dn2 / nO2)),
            np.max(np.abs(base_2 - 0.5 * trS * dn2 / nO2)))),
        "norm_sq_index_swapped": float(max(
            np.max(np.abs(base_1 - 0.5 * trS * dn2 / nO2)),
            np.max(np.abs(base_2 - 0.5 * trS * dn1 / nO2)))),
    }
    vanishing = min(star_variants, key=star_variants.get)
    return IntegrabilityReport(residuals, fields, star_variants, vanishing)


# ---------------------------------------------------------------------------
# seeds
# ---------------------------------------------------------------------------

def standard_seed(data: ConformalData | None = None) -> np.ndarray:
    """The explicit orthonormal seed frame at the grid origin:

        y   = (1, e1-aligned point)            (null, future-pointing)
        xi  = (0, 0, 1, 0, 0)                  (unit, <y, xi> = 0)
        xi-hat_1, xi-hat_2 = remaining unit spatial slots
        y*  = the unique null vector with <y*, y> = -1 and zero pairing
              with the three spatial rows.
    """
    rows = np.zeros((5, 5))
    rows[0] = (1.0, 1.0, 0.0, 0.0, 0.0)          # y
    rows[1] = (0.5, -0.5, 0.0, 0.0, 0.0)         # y*
    rows[2] = (0.0, 0.0, 0.0, 1.0, 0.0)          # xi-hat_1
    rows[3] = (0.0, 0.0, 0.0, 0.0, 1.0)          # xi-hat_2
    rows[4] = (0.0, 0.0, 1.0, 0.0, 0.0)          # xi
    return rows


def seed_from_frame(data: ConformalData, index: tuple = (0, 0)) -> np.ndarray:
    """Seed equal to the exact chart frame at a node (chart source only)."""
    if data.source != "chart":
        raise ConfigError("seed_from_frame requires chart-derived data")
    fs = data._frame
    i, j = index
    sm = np.sqrt(fs.m.value[i, j])
    rows = np.zeros((5, 5))
    rows[0] = [c.value[i, j] for c in fs.y_l]
    rows[1] = [c.value[i, j] for c in fs.y_star]
    rows[2] = [c.deriv(0).value[i, j] / sm for c in fs.xi]
    rows[3] = [c.deriv(1).value[i, j] / sm for c in fs.xi]
    rows[4] = [c.value[i, j] for c in fs.xi]
    return rows


def transform_seed(seed: np.ndarray, L: LorentzMap) -> np.ndarray:
    """Apply a Lorentz map to every frame row of the seed."""
    return np.asarray(seed) @ L.m.T


def _check_seed(seed: np.ndarray, m0: float | None = None,
                tol: float = 1e-8) -> np.ndarray:
    seed = np.asarray(seed, dtype=float)
    if seed.shape != (5, 5):
        raise ConfigError("seed frame must be a 5x5 row matrix")
    gram = seed @ ETA @ seed.T
    err = np.max(np.abs(gram - GRAM_TARGET))
    if err > tol:
        raise ConfigError(
            f"seed frame violates the orthonormality relations (err={err:.2e})")
    return seed


# ---------------------------------------------------------------------------
# structure matrices and integration
# ---------------------------------------------------------------------------

def _point_tables(data: ConformalData, axis: int, frac: float) -> dict:
    """Field values (plus m_u1, m_u2) on the node grid shifted by ``frac`` of
    one spacing along ``axis``.

    Chart sources are evaluated exactly at the shifted points; tabulated
    periodic sources are interpolated trigonometrically."""
    grid = data.grid
    if data.source == "chart":
        u1, u2 = grid.nodes()
        if axis == 0:
            u1 = u1 + frac * grid.h1
        else:
            u2 = u2 + frac * grid.h2
        fs = conformal_frame(data.chart, data.factor, (u1, u2), order=0)
        return {"m": fs.m.value, "m1": fs.m.deriv(0).value,
                "m2": fs.m.deriv(1).value,
                "w1": fs.omega[0].value, "w2": fs.omega[1].value,
                "O11": fs.Omega[0][0].value, "O12": fs.Omega[0][1].value,
                "O22": fs.Omega[1][1].value, "S11": fs.OmegaStar[0][0].value,
                "S12": fs.OmegaStar[0][1].value,
                "S22": fs.OmegaStar[1][1].value}
    tabs = {k: data.tables[k] for k in _FIELD_NAMES}
    tabs["m1"] = fd_derivative(data.tables["m"], 0, grid)
    tabs["m2"] = fd_derivative(data.tables["m"], 1, grid)
    if frac == 0.0:
        return tabs
    if not grid.periodic[axis]:
        raise ConfigError(
            "tabulated data on a non-periodic axis cannot be integrated "
            "(sub-step interpolation undefined); derive from a chart or "
            "supply a periodic grid")
    return {k: _frac_shift(v, axis, grid, frac) for k, v in tabs.items()}


def _structure_matrix(t: dict, i: int) -> np.ndarray:
    """B_i as an array of shape grid + (5, 5) from point tables."""
    m = t["m"]
    sm = np.sqrt(m)
    ism = 1.0 / sm
    mt = (t["m2"] if i == 0 else t["m1"]) / (2.0 * m)
    w = t["w1"] if i == 0 else t["w2"]
    Oi = (t["O11"], t["O12"]) if i == 0 else (t["O12"], t["O22"])
    Si = (t["S11"], t["S12"]) if i == 0 else (t["S12"], t["S22"])
    z = np.zeros_like(m)
    sgn = 1.0 if i == 0 else -1.0
    rows = [
        [-w, z, -Oi[0] * ism, -Oi[1] * ism, z],
        [z, w, -Si[0] * ism, -Si[1] * ism, z],
        [-Si[0] * ism, -Oi[0] * ism, z, -sgn * mt,
         -sm if i == 0 else z],
        [-Si[1] * ism, -Oi[1] * ism, sgn * mt, z,
         z if i == 0 else -sm],
        [z, z, sm if i == 0 else z, z if i == 0 else sm, z],
    ]
    return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)


def _rk4_step(F, B0, Bh, B1, h):
    """One classic 4th-order step of the linear system F' = B F."""
    k1 = B0 @ F
    k2 = Bh @ (F + 0.5 * h * k1)
    k3 = Bh @ (F + 0.5 * h * k2)
    k4 = B1 @ (F + h * k3)
    return F + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


_GAUSS_C = (0.5 - np.sqrt(3.0) / 6.0, 0.5 + np.sqrt(3.0) / 6.0)


def _expm_taylor(M: np.ndarray, terms: int = 16) -> np.ndarray:
    """exp of small batched matrices by a Horner-evaluated Taylor series
    (entries here satisfy |M| << 1, so 16 terms reach machine precision)."""
    eye = np.broadcast_to(np.eye(M.shape[-1]), M.shape)
    out = eye + M / terms
    for j in range(terms - 1, 0, -1):
        out = eye + (M / j) @ out
    return out


def _magnus_step(F, A1, A2, h):
    """One 4th-order exponential (Magnus, two Gauss nodes) step of F' = B F.

    The structure matrices lie in the Lie algebra preserving the frame Gram
    matrix, so the exponential step preserves it to machine precision, and
    the step is exact whenever B is constant along the line."""
    M = (0.5 * h) * (A1 + A2) + (np.sqrt(3.0) / 12.0 * h * h) * (A2 @ A1 - A1 @ A2)
    return _expm_taylor(M) @ F


def _gram_correct(F):
    """One Newton step of F -> G0 measured-Gram-inverse projection; restores
    F eta F^T = G0 quadratically."""
    gram = F @ ETA @ np.swapaxes(F, -1, -2)
    return 0.5 * (F + GRAM_TARGET @ np.linalg.inv(gram) @ F)


@dataclass
class FrameField:
    """Frame rows [y, y*, xi-hat_1, xi-hat_2, xi] at every grid node."""
    frames: np.ndarray            # (n1, n2, 5, 5)
    grid: GridSpec
    gram_drift: float
    sweep: str

    def gram_defect_field(self) -> np.ndarray:
        gram = self.frames @ ETA @ np.swapaxes(self.frames, -1, -2)
        return np.max(np.abs(gram - GRAM_TARGET), axis=(-2, -1))


def integrate_structure_equations(data: ConformalData, seed: np.ndarray,
                                  sweep: str = "rows-then-columns",
                                  integrability_tol: float = 1e-6,
                                  drift_limit: float = 1e-4,
                                  gram_correct_every: int = 0,
                                  method: str = "rk4") -> FrameField:
    """Integrate F' = B_i F over the grid from a seed frame at the origin.

    Sweep order "rows-then-columns": along u1 on the base row j = 0, then
    along u2 up every column (all columns advanced together).  The
    "columns-then-rows" sweep transposes the roles; agreement of the two is
    the path-independence check, not an assumption.  No re-orthonormalization
    is performed unless ``gram_correct_every`` > 0 (off by default so that
    Gram drift remains an honest health metric).

    ``method``: "rk4" (classic 4th-order single step, the default) or
    "magnus" (4th-order exponential step on two Gauss nodes; same order and
    step size, but Gram-preserving by construction and exact on
    constant-coefficient lines).  Both use step = grid spacing.
    """
    seed = _check_seed(seed)
    report = integrability_residuals(data)
    if report.max_residual > integrability_tol:
        raise IntegrabilityError(
            f"integrability residual {report.max_residual:.3e} exceeds "
            f"{integrability_tol:.1e}; path-dependent integration refused")
    if sweep not in ("rows-then-columns", "columns-then-rows"):
        raise ConfigError(f"unknown sweep order '{sweep}'")
    if method not in ("rk4", "magnus"):
        raise ConfigError(f"unknown integration method '{method}'")

    grid = data.grid
    if method == "rk4":
        Bn = [_structure_matrix(_point_tables(data, i, 0.0), i)
              for i in range(2)]
        Bh = [_structure_matrix(_point_tables(data, i, 0.5), i)
              for i in range(2)]
    else:
        Bg = [[_structure_matrix(_point_tables(data, i, c), i)
               for c in _GAUSS_C] for i in range(2)]
    frames = np.zeros(grid.shape + (5, 5))

    def advance(F, axis, line, k):
        """Step from node k to k+1 along ``axis`` on index ``line`` of the
        other axis (line = slice for whole-front advancement)."""
        h = grid.h1 if axis == 0 else grid.h2
        sel = (lambda B: B[k, line]) if axis == 0 else (lambda B: B[line, k])
        if method == "rk4":
            sel1 = (lambda B: B[k + 1, line]) if axis == 0 \
                else (lambda B: B[line, k + 1])
            F = _rk4_step(F, sel(Bn[axis]), sel(Bh[axis]), sel1(Bn[axis]), h)
        else:
            F = _magnus_step(F, sel(Bg[axis][0]), sel(Bg[axis][1]), h)
        if gram_correct_every and (k + 1) % gram_correct_every == 0:
            F = _gram_correct(F)
        return F

    if sweep == "rows-then-columns":
        F = seed.copy()
        frames[0, 0] = F
        for k in range(grid.n1 - 1):
            F = advance(F, 0, 0, k)
            frames[k + 1, 0] = F
        front = frames[:, 0].copy()
        for k in range(grid.n2 - 1):
            front = advance(front, 1, slice(None), k)
            frames[:, k + 1] = front
    else:
        F = seed.copy()
        frames[0, 0] = F
        for k in range(grid.n2 - 1):
            F = advance(F, 1, 0, k)
            frames[0, k + 1] = F
        front = frames[0, :].copy()
        for k in range(grid.n1 - 1):
            front = advance(front, 0, slice(None), k)
            frames[k + 1, :] = front

    gram = frames @ ETA @ np.swapaxes(frames, -1, -2)
    drift = float(np.max(np.abs(gram - GRAM_TARGET)))
    if drift > drift_limit:
        raise GramDriftError(
            f"Gram drift {drift:.3e} exceeds {drift_limit:.1e}; refine the grid")
    return FrameField(frames, grid, drift, sweep)


def path_independence(data: ConformalData, seed: np.ndarray,
                      **kwargs) -> float:
    """Max pointwise frame difference between the two sweep orders."""
    a = integrate_structure_equations(data, seed, "rows-then-columns", **kwargs)
    b = integrate_structure_equations(data, seed, "columns-then-rows", **kwargs)
    return float(np.max(np.abs(a.frames - b.frames)))


# ---------------------------------------------------------------------------
# surface extraction and Mobius-invariant comparison
# ---------------------------------------------------------------------------

@dataclass
class SurfaceField:
    """A surface in S^3 with its scale field: y = lam_hat (1, x_hat).

    ``frames`` optionally carries the full frame rows the surface came from;
    when present, invariant fields are computed from first derivatives of
    the frame (far better conditioned than fourth derivatives of x_hat)."""
    x_hat: np.ndarray             # (n1, n2, 4), |x_hat| = 1
    lam_hat: np.ndarray           # (n1, n2), positive
    grid: GridSpec
    sphere_defect: float = 0.0
    frames: np.ndarray | None = None


def extract_surface(field: FrameField) -> SurfaceField:
    """Read off (x_hat, lam_hat) from the null frame row y."""
    y = field.frames[..., 0, :]
    lam = y[..., 0]
    if np.min(lam) <= 0.0:
        raise GramDriftError(
            "frame row y left the future cone (non-positive time component); "
            "the integration failed")
    x = y[..., 1:] / lam[..., None]
    defect = float(np.max(np.abs(np.linalg.norm(x, axis=-1) - 1.0)))
    return SurfaceField(x, lam, field.grid, defect, frames=field.frames)


def chart_surface_field(chart: SurfaceChart, factor: ConformalFactor,
                        grid: GridSpec) -> SurfaceField:
    """The surface field of a catalog chart (reference for round trips),
    carrying the exact frame rows."""
    fs = conformal_frame(chart, factor, grid.nodes(), order=0)
    sm = np.sqrt(fs.m.value)
    rows = [
        np.stack([c.value for c in fs.y_l], axis=-1),
        np.stack([c.value for c in fs.y_star], axis=-1),
        np.stack([c.deriv(0).value for c in fs.xi], axis=-1) / sm[..., None],
        np.stack([c.deriv(1).value for c in fs.xi], axis=-1) / sm[..., None],
        np.stack([c.value for c in fs.xi], axis=-1),
    ]
    frames = np.stack(rows, axis=-2)
    x = np.stack([c.value for c in fs.y], axis=-1)[..., 1:]
    return SurfaceField(x, fs.lam_hat.value, grid, frames=frames)


def surface_invariant_fields(sf: SurfaceField) -> dict:
    """Pointwise Mobius-invariant fields of a surface-with-scale:

        moebius_m   the Mobius metric coefficient  |IIo|^2 E / 2
        normII2     |IIo|^2 / lam_hat^2            (order-2 normalization)
        willmore    (Lap_I H + |IIo|^2 H) / lam_hat^3

    When the field carries frames, everything follows from one spectral
    derivative of the frame rows:

        m            = <xi_u1, xi_u1>
        Omega_ij     = -sqrt(m) <d_i y, xi-hat_j>,   E_lam = <y_u1, y_u1>
        Omega*_ij    = -sqrt(m) <d_i y*, xi-hat_j>
        normII2      = |Omega|^2 / E_lam^2
        willmore     = -tr(Omega*) / E_lam

    Otherwise the round-metric quantities are computed from x_hat alone
    through spectral derivatives (fourth order in x_hat for willmore); the
    lam_hat powers remove the Mobius factor.
    """
    grid = sf.grid
    if not (grid.periodic[0] and grid.periodic[1]):
        raise ConfigError("invariant fields require a doubly periodic grid")
    if sf.frames is not None:
        return _frame_invariant_fields(sf)
    x = sf.x_hat
    d = [np.stack([spectral_derivative(x[..., a], i, grid)
                   for a in range(4)], axis=-1) for i in range(2)]
    dd = [[np.stack([spectral_derivative(d[i][..., a], j, grid)
                     for a in range(4)], axis=-1) for j in range(2)]
          for i in range(2)]

    g = [[np.einsum("...a,...a->...", d[i], d[j]) for j in range(2)]
         for i in range(2)]
    det_g = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    ginv = [[g[1][1] / det_g, -g[0][1] / det_g],
            [-g[1][0] / det_g, g[0][0] / det_g]]

    # normal in T S^3: the 4d generalized cross product of x, x_u1, x_u2
    mats = np.stack([x, d[0], d[1]], axis=-2)      # (..., 3, 4)
    cof = []
    for a in range(4):
        cols = [b for b in range(4) if b != a]
        minor = mats[..., :, cols]
        cof.append((-1.0) ** a * np.linalg.det(minor))
    n = np.stack(cof, axis=-1)
    n /= np.linalg.norm(n, axis=-1, keepdims=True)

    II = [[np.einsum("...a,...a->...", dd[i][j], n) for j in range(2)]
          for i in range(2)]
    H = 0.5 * sum(ginv[i][j] * II[j][i] for i in range(2) for j in range(2))
    IIo = [[II[i][j] - H * g[i][j] for j in range(2)] for i in range(2)]
    norm_IIo_sq = sum(ginv[i][k] * ginv[j][l] * IIo[i][j] * IIo[k][l]
                      for i in range(2) for j in range(2)
                      for k in range(2) for l in range(2))

    sqrt_g = np.sqrt(det_g)
    dH = [spectral_derivative(H, i, grid) for i in range(2)]
    flux = [sqrt_g * sum(ginv[i][j] * dH[j] for j in range(2))
            for i in range(2)]
    lap_H = (spectral_derivative(flux[0], 0, grid)
             + spectral_derivative(flux[1], 1, grid)) / sqrt_g

    lam = sf.lam_hat
    return {
        "moebius_m": 0.5 * norm_IIo_sq * sqrt_g,
        "normII2": norm_IIo_sq / lam ** 2,
        "willmore": (lap_H + norm_IIo_sq * H) / lam ** 3,
    }


def _minkowski_dot(a, b):
    return -a[..., 0] * b[..., 0] + np.einsum("...k,...k->...",
                                              a[..., 1:], b[..., 1:])


def _frame_invariant_fields(sf: SurfaceField) -> dict:
    grid = sf.grid
    fr = sf.frames
    dy = [np.stack([spectral_derivative(fr[..., 0, a], i, grid)
                    for a in range(5)], axis=-1) for i in range(2)]
    dys = [np.stack([spectral_derivative(fr[..., 1, a], i, grid)
                     for a in range(5)], axis=-1) for i in range(2)]
    dxi = [np.stack([spectral_derivative(fr[..., 4, a], i, grid)
                     for a in range(5)], axis=-1) for i in range(2)]
    m = 0.5 * (_minkowski_dot(dxi[0], dxi[0]) + _minkowski_dot(dxi[1], dxi[1]))
    sm = np.sqrt(m)
    xihat = [fr[..., 2, :], fr[..., 3, :]]
    Om = [[-sm * _minkowski_dot(dy[i], xihat[j]) for j in range(2)]
          for i in range(2)]
    Os = [[-sm * _minkowski_dot(dys[i], xihat[j]) for j in range(2)]
          for i in range(2)]
    E_lam = 0.5 * (_minkowski_dot(dy[0], dy[0]) + _minkowski_dot(dy[1], dy[1]))
    norm_Om_sq = (Om[0][0] ** 2 + Om[0][1] ** 2 + Om[1][0] ** 2
                  + Om[1][1] ** 2)
    return {
        "moebius_m": m,
        "normII2": norm_Om_sq / E_lam ** 2,
        "willmore": -(Os[0][0] + Os[1][1]) / E_lam,
    }


@dataclass
class MobiusComparison:
    """Max absolute deviation of each Mobius-invariant field."""
    deviations: dict

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())


def compare_modulo_mobius(a: SurfaceField, b: SurfaceField) -> MobiusComparison:
    """Compare two surface fields through Mobius-invariant fields only; no
    attempt is made to solve for an aligning Lorentz map."""
    if a.grid.shape != b.grid.shape:
        raise ConfigError("surface fields must share a common grid")
    fa = surface_invariant_fields(a)
    fb = surface_invariant_fields(b)
    return MobiusComparison({k: float(np.max(np.abs(fa[k] - fb[k])))
                             for k in fa})
