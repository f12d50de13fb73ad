"""Exception hierarchy shared by every module.

Each class carries the process exit code the CLI maps it to:
2 for domain/range problems, 3 for precision exhaustion, 4 for
internal consistency failures (branch logic, series checks, solvers).
"""


class TouchardError(Exception):
    exit_code = 1


class DomainError(TouchardError):
    """Input outside the mathematical domain of an operation."""

    exit_code = 2


class InvalidPrecisionError(DomainError):
    """Working precision below the 30 digit floor, or not an integer."""


class CapacityError(DomainError):
    """Structural size limit exceeded (triangle rows, series order)."""


class OrderError(DomainError):
    """A series or table was asked for more terms than it holds."""


class RegimeError(DomainError):
    """Evaluation requested inside the exclusion band of a method."""


class StepError(DomainError):
    """Contour step too large to hold the Im psi drift budget."""


class PrecisionExhaustedError(TouchardError):
    """Escalation cap hit before two evaluations stabilised.

    last_two holds the final pair of disagreeing estimates so callers can
    inspect how far apart they were.
    """

    exit_code = 3

    def __init__(self, message, last_two=None):
        super().__init__(message)
        self.last_two = last_two


class InternalConsistencyError(TouchardError):
    exit_code = 4


class BranchError(InternalConsistencyError):
    """A square root or logarithm landed on the wrong sheet."""


class SeriesConsistencyError(InternalConsistencyError):
    """Series coefficients failed an exact cross-check."""


class SolverError(InternalConsistencyError):
    """Iterative root finder failed to converge or certify its residual."""
