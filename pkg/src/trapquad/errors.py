"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when quantum numbers, units or configuration are malformed."""


class ResonanceError(ArithmeticError):
    """Raised when an off-resonant formula is evaluated too close to a resonance."""


class QuadratureConvergenceError(RuntimeError):
    """Raised when the noise-averaging quadrature fails its order-doubling check."""


class IntegrationError(RuntimeError):
    """Raised when the time-dependent integrator misses its accuracy targets."""


class FitError(RuntimeError):
    """Raised when a spectrum fit does not converge or has a degenerate covariance."""
