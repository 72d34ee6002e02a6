"""Exception hierarchy shared by every module of the package."""


class PencilBvpError(Exception):
    """Base class for all errors raised by pencilbvp."""


class DimensionError(PencilBvpError, ValueError):
    """Operands have incompatible or malformed shapes."""


class PreconditionError(PencilBvpError):
    """A method was called on data violating its mathematical preconditions."""


class UsageError(PencilBvpError):
    """An operation was requested for a result it does not apply to."""


class ConsistencyError(PencilBvpError):
    """An internal identity that must hold exactly was found violated."""


class HorizonError(PencilBvpError, ValueError):
    """An unrolling horizon is shorter than the structural bound."""

    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


class ParseError(PencilBvpError, ValueError):
    """A problem file or scalar literal could not be parsed."""

    def __init__(self, message, position=None):
        if position:
            message = f"{position}: {message}"
        super().__init__(message)
        self.position = position
