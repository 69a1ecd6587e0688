from typing import Optional


class PilabError(Exception):
    """Base class for every error raised by the engine"""
    exit_code: int = 1


class DimensionMismatchError(PilabError, ValueError):
    """Sizes or coordinate lengths do not agree"""


class InvalidHookError(PilabError, ValueError):
    """Hook parameters that describe no partition"""


class DependentBasisError(PilabError, ValueError):
    """Rows handed over as a basis are linearly dependent"""


class ParityMismatchError(PilabError, ValueError):
    """A permutation or substitution breaks the even/odd typing"""


class ParityRequiredError(PilabError, ValueError):
    """An operation needs parity-typed variables"""


class TableauMismatchError(PilabError, ValueError):
    """Tableau entries do not cover the expected variable indices"""


class UnknownBuiltinError(PilabError, KeyError):
    """No builtin algebra under that name"""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown builtin"


class GradingRequiredError(PilabError, ValueError):
    """A Z2-grading is required but the algebra has none"""


class AlgebraFileError(PilabError, ValueError):
    """An algebra file could not be parsed or validated"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnluckyPrimeError(PilabError, ArithmeticError):
    """The chosen prime divides a denominator or drops a rank"""


class InternalInconsistencyError(PilabError, RuntimeError):
    """A consistency gate failed; this signals a bug, not bad data"""
    exit_code = 2


class BudgetExceededError(PilabError, RuntimeError):
    """The requested computation exceeds the configured budget"""
    exit_code = 3

    def __init__(self, message: str, estimate_mb: Optional[float] = None):
        self.estimate_mb = estimate_mb
        if estimate_mb is not None:
            message = f"{message} (estimated {estimate_mb:.1f} MB)"
        super().__init__(message)


class UsageError(PilabError, ValueError):
    """Bad command-line usage"""
