"""Exception and warning types shared across the package."""


class WbidentError(Exception):
    """Base class for all package errors."""


class PoleError(WbidentError):
    """Function evaluated at a pole (e.g. gamma at a nonpositive integer)."""


class ConvergenceError(WbidentError):
    """A series or quadrature failed to converge within its configured budget."""


class DegenerateParameterError(WbidentError):
    """Parameters fall on a degenerate manifold where the formula is invalid
    (e.g. the Whittaker connection formula with 2*mu a nonzero integer)."""


class IllConditionedError(WbidentError):
    """A least-squares design matrix exceeded the configured condition limit."""

    def __init__(self, message, cond=None):
        super().__init__(message)
        self.cond = cond


class InvariantViolationError(WbidentError):
    """A constructed object violated one of its defining invariants; this
    usually signals a convention or transcription failure upstream."""


class StepInstabilityError(WbidentError):
    """A finite-difference residual changed too much under step halving to be
    trusted."""


class NearDegeneracyWarning(UserWarning):
    """Parameters are close enough to a degenerate manifold that severe
    cancellation is expected."""
