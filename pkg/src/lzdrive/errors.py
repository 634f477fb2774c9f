"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical or validated domain of an operation."""


class AccuracyError(ArithmeticError):
    """The requested accuracy cannot be reached in double precision."""


class OffResonanceError(ValueError):
    """Multiphoton resonance condition is not met to the required tolerance."""


class UnsupportedConfigError(ValueError):
    """A closed-form special case was invoked outside its preconditions."""


class IntegrationError(RuntimeError):
    """Numerical propagation failed; carries the failure time when known."""

    def __init__(self, message, tau=None):
        super().__init__(message)
        self.tau = tau


class ConfigError(ValueError):
    """Invalid run configuration; carries key/line context when known."""

    def __init__(self, message, key=None, line=None):
        super().__init__(message)
        self.key = key
        self.line = line
