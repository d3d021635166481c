"""Exception types shared across relaylab modules."""


class RelaylabError(Exception):
    """Base class for all relaylab errors."""


class DomainError(RelaylabError, ValueError):
    """Input violates a precondition or a strict feasibility constraint.

    The message names the violated inequality, e.g. ``delta*sigma2 < 1``.
    """


class InfeasibleError(RelaylabError):
    """No feasible point was found (every optimizer start hit the sentinel)."""


class ConvergenceError(RelaylabError):
    """An iterative routine failed to reach its tolerance.

    Carries the best estimate reached so far in ``best_estimate``.
    """

    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate


class OptimizerError(RelaylabError):
    """Optimizer failure with diagnostics in the message."""
