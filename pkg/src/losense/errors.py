"""Exception and warning types shared across the package."""


class ConfigurationError(ValueError):
    """A configuration or input violates a documented invariant."""


class NumericError(RuntimeError):
    """A numerical routine failed to converge or hit a degenerate case."""


class AccuracyWarning(UserWarning):
    """A computed probability needed clamping by more than the tolerance."""
