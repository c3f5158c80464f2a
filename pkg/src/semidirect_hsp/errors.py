"""Exception types shared across the package."""


class DomainError(ValueError):
    """Inputs outside the supported mathematical domain."""


class TheoryViolation(AssertionError):
    """A structural identity the algorithm depends on did not hold.

    Raised instead of returning a wrong answer; the CLI maps it to exit code 2.
    """


class SolverFailure(RuntimeError):
    """The randomized solver gave up (every round failed, or samples were inconsistent)."""

    def __init__(self, message: str, reason: str = "all-rounds-failed"):
        super().__init__(message)
        self.reason = reason
