"""Exception hierarchy shared across the solver."""


class AwenoError(Exception):
    """Base class for all solver errors."""


class ConfigurationError(AwenoError):
    """Invalid grid, run, or problem configuration."""


class RegistryError(ConfigurationError):
    """Unknown benchmark problem name."""


class PhysicalStateError(AwenoError):
    """Nonpositive density or internal energy encountered.

    Carries an optional ``where`` payload identifying the offending
    cell/interface so failures can be localized.
    """

    def __init__(self, message, where=None):
        super().__init__(message if where is None else f"{message} at {where}")
        self.where = where


class DecompositionError(PhysicalStateError):
    """Interface-averaged state is not admissible for the characteristic basis."""


class StepFailure(AwenoError):
    """A Runge-Kutta stage produced an invalid state."""

    def __init__(self, stage, cause):
        super().__init__(f"time step failed in stage {stage}: {cause}")
        self.stage = stage
        self.cause = cause
