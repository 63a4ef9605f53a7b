"""Exception hierarchy shared by every module of the package."""


class NumRadError(Exception):
    """Base class for all package errors."""


class NonSquare(NumRadError, ValueError):
    pass


class NonHermitian(NumRadError, ValueError):
    pass


class NotPSD(NumRadError, ValueError):
    pass


class NonFinite(NumRadError, ValueError):
    pass


class EigenFailure(NumRadError, ArithmeticError):
    pass


class NonConvergence(NumRadError, ArithmeticError):
    pass


class NegativeEntry(NumRadError, ValueError):
    pass


class ShapeMismatch(NumRadError, ValueError):
    pass


class UnknownBound(NumRadError, KeyError):
    pass


class ParamOutOfDomain(NumRadError, ValueError):
    pass


class ZeroAlpha(ParamOutOfDomain):
    pass


class NotInvertible(NumRadError, ValueError):
    pass


class NotSelfAdjoint(NumRadError, ValueError):
    pass


class UnknownLemma(NumRadError, KeyError):
    pass


class WrongArity(NumRadError, ValueError):
    pass


class BadDim(NumRadError, ValueError):
    pass


class EmptyReport(NumRadError, ValueError):
    pass


class ParseError(NumRadError, ValueError):
    """Malformed matrix file; carries the offending line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class DimensionMismatch(ParseError):
    pass


class BoundViolation(NumRadError, AssertionError):
    """A checked inequality failed beyond tolerance."""

    def __init__(self, message, recipe=None):
        self.recipe = recipe or {}
        super().__init__(message)
