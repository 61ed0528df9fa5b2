"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested function."""


class GridMismatchError(ValueError):
    pass


class DegenerateTableError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    """The instance is larger than the configured budget.

    ``lower_bound`` carries whatever partial answer was available when the
    computation was refused (for independent sets: a greedy set size).
    """

    def __init__(self, message, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class InfeasibleDegreeError(RuntimeError):
    """No admissible polynomial degree exists for the requested distance."""


class LPError(RuntimeError):
    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class RootFindingError(RuntimeError):
    pass


class NotASubgroupError(ValueError):
    pass


class DuplicateCosetError(ValueError):
    pass


class CertificateRejected(RuntimeError):
    """A certificate failed one of its verification clauses."""

    def __init__(self, clause, violation):
        super().__init__(f"{clause}: violation {violation:.3e}")
        self.clause = clause
        self.violation = violation


class CodeFormatError(ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
