"""Exception types shared across the package."""


class GradedPIError(Exception):
    """Base class for all package errors."""


class FieldSpecError(GradedPIError):
    """Bad field parameters: p not a prime > 3, or unsupported extension degree."""


class NotPresent(GradedPIError):
    """The requested field element does not exist (e.g. cube root when 3 does not divide q-1)."""


class UnknownName(GradedPIError):
    """No builtin algebra with that name."""


class CubeRootMissing(GradedPIError):
    """A Z3-graded builtin was requested over a field without a primitive cube root."""


class NotClosed(GradedPIError):
    """A matrix-realized algebra whose brackets leave the span of the given basis."""


class JacobiViolation(GradedPIError):
    """Structure constants violating antisymmetry or the Jacobi identity."""


class GradingViolation(GradedPIError):
    """Structure constants incompatible with the declared grading."""


class ParseError(GradedPIError):
    """Malformed input file or DSL text; carries a position where possible."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class UnknownFamily(GradedPIError):
    """A variable family letter not declared by the active grading profile."""


class NonPositiveExponent(GradedPIError):
    """A bracket power resolved to an exponent < 1."""


class ProfileMismatch(GradedPIError):
    """Basis file profile incompatible with the requested grading/group."""


class GradeMismatch(GradedPIError):
    """An evaluation assignment placing a vector outside its variable's grade component."""


class CapExceeded(GradedPIError):
    """A free-Lie-algebra request above the configured degree cap."""


class BudgetExceeded(GradedPIError):
    """An enumeration whose size passes the configured budget."""


class NotMonolithic(GradedPIError):
    """The algebra has several minimal ideals; carries the list of them."""

    def __init__(self, minimal_ideals):
        super().__init__(f"not monolithic: {len(minimal_ideals)} minimal ideals")
        self.minimal_ideals = minimal_ideals


class CellMismatch(GradedPIError):
    """Two spans over different multidegree cells cannot be compared."""
