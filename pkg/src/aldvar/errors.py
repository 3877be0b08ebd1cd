"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ConvergenceError(RuntimeError):
    """An iterative numerical routine failed to converge."""


class InterpolationError(RuntimeError):
    """An interpolated correction term is ill-defined (e.g. a negative anchor).

    Carries the branch label so callers can report which piece of the
    approximation failed.
    """

    def __init__(self, message: str, branch: str):
        super().__init__(f"{message} (branch: {branch})")
        self.branch = branch
