"""Exception types raised by the numerical routines."""


class DomainError(ValueError):
    """Argument outside the region where a quantity is defined."""


class PreconditionError(ValueError):
    """A sampled precondition of a statement does not hold."""


class TruncationError(RuntimeError):
    """A series could not be truncated to the requested tail tolerance."""


class IllConditionedError(RuntimeError):
    """Division by a multiplier too small to be trusted."""


class ConvergenceError(RuntimeError):
    """An iterative solver stopped before reaching its tolerance."""
