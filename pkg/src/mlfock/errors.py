"""Exception hierarchy shared by all modules."""


class MLFockError(Exception):
    """Base class for all errors raised by :mod:`mlfock`."""


class DomainError(MLFockError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(MLFockError, ArithmeticError):
    """A series did not reach the requested tolerance within its term budget."""


class TruncationError(MLFockError, ArithmeticError):
    """A kernel truncation cannot meet the requested tail tolerance."""


class CapacityError(MLFockError, ValueError):
    """A quadrature rule is too small to integrate the requested integrand exactly."""


class InconsistentSystemError(MLFockError, ArithmeticError):
    """An overdetermined identity has no exact solution (falsified at some sample)."""


class InconclusiveError(MLFockError, RuntimeError):
    """Neither candidate sign reproduces the composed operator."""
