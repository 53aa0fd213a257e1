"""Failure modes shared across modules and mapped to CLI exit codes."""


class ConfsurfError(Exception):
    """Base class for domain errors."""
    exit_code = 1


class ConfigError(ConfsurfError):
    """Malformed or inconsistent run configuration."""
    exit_code = 2


class UmbilicPointError(ConfsurfError):
    """|det Omega| fell below the umbilic threshold; the conformal frame
    construction needs an umbilic-free surface."""
    exit_code = 3


class DegenerateAmbientError(ConfsurfError):
    """The associate 4-surface / ruled 3-surface metric is degenerate at the
    requested (alpha, rho) or t."""
    exit_code = 4


class IntegrabilityError(ConfsurfError):
    """Input conformal data fails the integrability conditions beyond
    tolerance; no surface can be reconstructed from it."""
    exit_code = 5


class GramDriftError(ConfsurfError):
    """Frame orthonormality drifted beyond tolerance during structure
    equation integration (step too coarse)."""
    exit_code = 6
