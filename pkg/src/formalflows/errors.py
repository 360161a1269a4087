"""Exception hierarchy shared by the library and the CLI."""


class FormalFlowsError(Exception):
    """Base class for all library errors."""


class RingError(FormalFlowsError, ValueError):
    """Invalid ring descriptor, or an element that does not belong to the ring."""


class RingMismatchError(RingError):
    pass


class NotAUnitError(FormalFlowsError, ArithmeticError):
    pass


class PreconditionError(FormalFlowsError, ValueError):
    """An operation was called on input outside its domain."""


class NotASumFunctionError(PreconditionError):
    """Fitted basis coefficients fall outside the coefficient ring."""


class VerificationError(FormalFlowsError):
    """A post-condition check failed (this indicates a bug or a bad truncation)."""


class ParseError(FormalFlowsError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
