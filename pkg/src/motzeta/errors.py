"""Exception hierarchy shared by every module of the package."""


class MotzetaError(Exception):
    """Base class for all errors raised by motzeta."""


class ParseError(MotzetaError, ValueError):
    pass


class MissingQuotient(MotzetaError, KeyError):
    """An equivariant symbol has no declared naive quotient partner."""


class MissingAssignment(MotzetaError, KeyError):
    pass


class PoleAtZero(MotzetaError, ZeroDivisionError):
    pass


class NotReducible(MotzetaError, ValueError):
    pass


class InvalidStratum(MotzetaError, ValueError):
    pass


class CenterTooSmall(MotzetaError, ValueError):
    pass


class EmptyCenter(MotzetaError, ValueError):
    pass


class IncompleteData(MotzetaError, ValueError):
    pass


class DatasetError(MotzetaError, ValueError):
    """A resolution dataset failed validation; ``diagnostics`` lists why."""

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)


class NoLimit(MotzetaError, ArithmeticError):
    pass


class TooLarge(MotzetaError, ValueError):
    pass


class InvalidField(MotzetaError, ValueError):
    pass


class NotSmooth(MotzetaError, ValueError):
    pass
