"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Malformed or incompatible input (bound mismatch, bad payload, ...)."""


class ConvergenceError(ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""
