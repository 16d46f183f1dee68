"""Exception hierarchy shared by all ratfam modules."""


class RatfamError(Exception):
    """Base class for all errors raised by this package."""


class PrecisionExhausted(RatfamError):
    """A result has no known terms at the working truncation order.

    Carries ``tau``, the exponent below which nothing is known, so callers
    can decide how much more precision a retry needs.
    """

    def __init__(self, message, tau=None):
        super().__init__(message)
        self.tau = tau


class DivisionByZero(RatfamError, ZeroDivisionError):
    """Division by an exactly-zero series or rational function."""


class NegativeValuation(RatfamError):
    """Residue requested for a series with a pole at t = 0."""


class ZeroDenominator(RatfamError):
    """Expansion of p/q requested with q identically zero."""


class DegenerateMap(RatfamError):
    """Coefficient pair has resultant zero up to the working precision."""


class AllZeroMap(RatfamError):
    """Every coefficient of the would-be map is exactly zero."""


class SingularMatrix(RatfamError):
    """Conjugation matrix has determinant zero up to the working precision."""


class BudgetExhausted(RatfamError):
    """Search ran out of probes; reported as an inconclusive verdict."""


class InconclusiveSearch(RatfamError):
    """A classification needed a definite pgr verdict but the search gave none.

    Carries the partial ``report`` for diagnostics.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SampleUndefined(RatfamError):
    """A numeric sample hit a pole of a coefficient, or is not exactly representable."""


class FamilyFormatError(RatfamError):
    """Base class for family-file problems; carries line/column when known."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class FamilySyntaxError(FamilyFormatError):
    """Malformed expression or file structure."""


class ArityError(FamilyFormatError):
    """Coefficient list length does not match degree + 1."""


class DegreeError(FamilyFormatError):
    """Missing or invalid degree declaration."""
