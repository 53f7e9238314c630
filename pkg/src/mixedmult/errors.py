"""Exception hierarchy shared by all modules.

Exit-code mapping used by the command line driver:
  2  parse errors
  3  input validation errors
  4  failed mathematical hypotheses (grade, primality, dimension, ...)
  5  internal assertion failures
"""


class MixedMultError(Exception):
    """Base class; `code` is a stable machine-readable identifier."""

    code = "error"
    exit_status = 1


class ParseError(MixedMultError):
    code = "parse-error"
    exit_status = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "line %d, column %d: %s" % (line, column, message)
        super().__init__(message)


class ValidationError(MixedMultError):
    code = "validation-error"
    exit_status = 3


class HypothesisError(MixedMultError):
    """An input violates a mathematical hypothesis of the requested operation."""

    code = "hypothesis-error"
    exit_status = 4


class GradeZeroError(HypothesisError):
    code = "grade-zero"


class NotPrimaryError(HypothesisError):
    code = "not-primary-to-maximal"


class IndexSumError(HypothesisError):
    code = "index-sum"


class NotZeroDimensionalError(HypothesisError):
    code = "not-zero-dimensional"


class NotIsolatedError(HypothesisError):
    code = "not-isolated-singularity"


class NonzerodivisorError(HypothesisError):
    code = "nonzerodivisor-failed"


class InternalError(MixedMultError):
    code = "internal-error"
    exit_status = 5


class ExponentOverflowError(InternalError):
    code = "exponent-overflow"
