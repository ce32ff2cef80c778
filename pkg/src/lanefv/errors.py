"""Package exceptions, grouped by the CLI exit code they map to."""


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration (exit code 1)."""


class ModelAdmissibilityError(ValueError):
    """Model violates a validated precondition (exit code 1)."""


class BoundsViolationError(RuntimeError):
    """A computed density left [0, rho_max] beyond tolerance (exit code 2)."""
