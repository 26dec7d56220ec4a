"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: usage errors exit 1, data and
validation errors exit 2, internal invariant violations exit 3.
"""


class UsageError(ValueError):
    """Operations or arguments were combined in an unsupported way."""


class DataError(ValueError):
    """Input data failed validation."""


class ThresholdError(DataError):
    """Decision threshold lies outside the open interval (0, 1)."""


class UndefinedAtThresholdError(DataError):
    """Requested quantity is undefined at this threshold (degenerate group)."""


class InfeasibleNetBenefitError(DataError):
    """Net benefit value unattainable at the given prevalence and threshold."""


class IngestionError(DataError):
    """A delimited input file failed to parse or validate.

    ``row`` counts data rows from 1 (the header row is row 0);
    ``column`` is the offending column name. Either may be None when
    the failure is not tied to a single cell.
    """

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.row = row
        self.column = column


class RouteDisagreementError(RuntimeError):
    """Two algebraically equivalent computations disagreed.

    This signals an implementation bug, never a data problem.
    """
