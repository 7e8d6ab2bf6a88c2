"""Exception types shared across the package."""


class KinematicsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(KinematicsError):
    """An operation was applied outside its mathematical domain."""


class InputError(KinematicsError):
    """Malformed or inconsistent caller-supplied data."""


class NumericError(KinematicsError):
    """A computation lost numerical meaning (e.g. normalizing near zero)."""


class ConvergenceError(KinematicsError):
    """An iterative solve stopped before reaching its tolerance.

    Carries the best iterate seen so that callers can inspect or restart.
    """

    def __init__(self, message, best_values=None, iterations=0, residual=float("nan")):
        super().__init__(message)
        self.best_values = best_values
        self.iterations = iterations
        self.residual = residual
