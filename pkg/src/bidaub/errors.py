"""Exceptions raised by the domain operations.

Every class here maps to exit status 1 in the command-line front end.
"""


class BidaubError(Exception):
    """Base class for domain failures."""

    #: short machine-readable reason used on the CLI's stderr line
    reason = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class InfeasibleParameters(BidaubError):
    reason = "infeasible_parameters"


class ZeroShift(BidaubError, ValueError):
    reason = "zero_shift"


class NoConvergence(BidaubError):
    reason = "no_convergence"


class InvalidKeyVector(BidaubError, ValueError):
    reason = "invalid_key_vector"


class InsufficientRange(BidaubError, ValueError):
    reason = "insufficient_range"
