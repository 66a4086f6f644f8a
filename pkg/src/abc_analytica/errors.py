"""Exception hierarchy.

The CLI maps these onto its exit codes: ``InputError`` -> 2,
``HypothesisViolation`` -> 3, ``InconsistencyError`` -> 4.
"""


class AbcAnalyticaError(Exception):
    """Base class for all errors raised by the package."""


class InputError(AbcAnalyticaError, ValueError):
    """Malformed or out-of-range input."""


class HypothesisViolation(AbcAnalyticaError, ValueError):
    """The inputs do not satisfy the hypotheses of the theorem being checked."""


class ConvergenceError(AbcAnalyticaError, ArithmeticError):
    """An iterative numerical routine failed to reach its tolerance.

    ``estimates`` carries whatever the routine had when it gave up
    (last two quadrature values, best root iterate, ...).
    """

    def __init__(self, message, estimates=None, residuals=None):
        super().__init__(message)
        self.estimates = estimates
        self.residuals = residuals


class ZeroNearBoundaryError(HypothesisViolation):
    """A function has a zero on (or numerically too close to) a contour."""


class InconsistencyError(AbcAnalyticaError, AssertionError):
    """Two computations that must agree did not.

    On a proven statement this points at a bug or a quadrature failure,
    never at the mathematics.
    """
