"""Exception hierarchy for the cofactorization library and CLI."""


class CofactError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(CofactError, ValueError):
    """Invalid hyperparameter or run configuration."""


class DataError(CofactError, ValueError):
    """Input data violates a problem invariant."""


class DimensionMismatchError(DataError):
    pass


class EmptyClassError(DataError):
    def __init__(self, class_id: int):
        self.class_id = class_id
        super().__init__(f"Class {class_id} has no labeled pixel")


class NonFiniteEntryError(DataError):
    def __init__(self, row: int, col: int, name: str = "matrix"):
        self.row = row
        self.col = col
        self.name = name
        super().__init__(f"Non-finite entry in {name} at ({row}, {col})")


class NegativeDictionaryError(DataError):
    def __init__(self, row: int, col: int):
        self.row = row
        self.col = col
        super().__init__(f"Negative dictionary entry at ({row}, {col})")


class DegenerateDictionaryError(DataError):
    def __init__(self, col: int):
        self.col = col
        super().__init__(f"Dictionary column {col} is identically zero")


class ZeroImageError(DataError):
    pass


class InfeasibleStateError(DataError):
    pass


class TooFewPointsError(DataError):
    pass


class ZeroVectorError(DataError):
    pass


class AllRowsPrunedError(DataError):
    pass


class EmptyMaskError(DataError):
    pass


class InvalidFractionError(DataError):
    pass


class ProblemValidationError(DataError):
    """Carries every violation found by validate_problem."""

    def __init__(self, violations: list[DataError]):
        self.violations = list(violations)
        summary = "; ".join(str(v) for v in self.violations)
        super().__init__(f"{len(self.violations)} problem violation(s): {summary}")


class MatrixFormatError(DataError):
    pass


class BadMagicError(MatrixFormatError):
    pass


class TruncatedFileError(MatrixFormatError):
    pass


class VersionUnsupportedError(MatrixFormatError):
    pass


class NonFiniteIterateError(CofactError):
    """A solver block update produced NaN or Inf."""

    def __init__(self, block: str, iteration: int):
        self.block = block
        self.iteration = iteration
        super().__init__(
            f"Non-finite values in block {block} at iteration {iteration}"
        )
