"""Exception hierarchy shared by every module."""


class ModelError(Exception):
    """Base class for all errors raised by the package."""


class InvalidParamsError(ModelError, ValueError):
    pass


class OutOfDomainError(ModelError, ValueError):
    pass


class InfeasibleError(ModelError, ValueError):
    """Unemployment plus recruiting exceeds the labor force (u + v(u) >= 1)."""


class NoSolutionError(ModelError):
    pass


class DegenerateCurveError(ModelError):
    """A steady-state locus does not depend on the requested variable.

    ``pi_level`` holds the inflation rate of the horizontal locus when one
    exists (no wealth in the utility), otherwise ``None``.
    """

    def __init__(self, message, pi_level=None):
        super().__init__(message)
        self.pi_level = pi_level


class StepFailure(ModelError, ArithmeticError):
    pass


class AmbiguousSolutionError(ModelError):
    pass


class InconsistentBranchError(ModelError):
    """Neither branch of a kinked curve yields a sign-consistent intersection."""

    def __init__(self, message, candidates=None):
        super().__init__(message)
        self.candidates = candidates or {}


class InsufficientDataError(ModelError, ValueError):
    pass


class DateMisalignmentError(ModelError, ValueError):
    pass


class DegenerateSystemError(ModelError):
    """Repeated eigenvalues: the eigenbasis solution is not defined."""
