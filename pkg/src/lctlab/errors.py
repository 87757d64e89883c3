"""Exception hierarchy shared by all lctlab modules."""


class LctlabError(Exception):
    """Base class for every error raised by this package."""


class InputError(LctlabError):
    """Malformed or inconsistent user input (bad dimensions, bad values)."""


class ComputationError(LctlabError):
    """A computation could not produce a certified result."""


class UnsupportedOperationError(LctlabError):
    """Operation not defined for this variant (e.g. Minkowski sum of oracles)."""


class HypothesisViolation(LctlabError):
    """A validated hypothesis (subadditivity, monotonicity, ...) failed.

    Carries the witnessing data so callers can report the violating pair.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
