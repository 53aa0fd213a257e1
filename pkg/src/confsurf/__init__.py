"""Conformal geometry of umbilic-free surfaces in the 3-sphere via their
Minkowski 5-space lifts: moving frames, the sphere-congruence map, the
associate 4-surface and ruled 3-surface, scalar conformal invariants of
orders 2..5, identity verification suites, and surface reconstruction
from conformal data."""

from .errors import (
    ConfsurfError, ConfigError, UmbilicPointError, DegenerateAmbientError,
    IntegrabilityError, GramDriftError,
)
from .jets import Jet2
from .mink5 import (
    ETA, LorentzMap, lorentz_inner, make_boost, make_rotation, mobius_action,
)
from .surfaces import SurfaceChart, ConformalFactor, catalog_surface
from .classical import classical_geometry, lambda_geometry
from .frame import FrameState, conformal_frame, frame_derivative_residuals
from .ambient import (
    AmbientForms, ambient_forms, ambient_jets, htilde_jets,
    appendix_inverse_jets, ruled_surface_forms, surface_invariants,
    invariant_suite, direct_invariants, double_laplace_direct,
    conformal_invariance_check, SURFACE_INVARIANT_ORDERS, INVARIANT_ORDERS,
)
from .reconstruction import (
    GridSpec, ConformalData, IntegrabilityReport, FrameField, SurfaceField,
    integrability_residuals, standard_seed, seed_from_frame, transform_seed,
    integrate_structure_equations, path_independence, extract_surface,
    surface_invariant_fields, compare_modulo_mobius, chart_surface_field,
)
from .verify import SUITES, run_suite
from .service import (
    RunConfig, ResultSet, run_compute, run_check, run_reconstruct,
    catalog_listing,
)

__version__ = "1.0.0"
