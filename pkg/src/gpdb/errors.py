"""Exception hierarchy shared by the engine and the command-line driver."""


class GpdbError(Exception):
    """Base class for every error raised by the engine."""

    exit_code = 1


class ParseError(GpdbError):
    exit_code = 3

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UnboundVariableError(GpdbError):
    pass


class NegationError(GpdbError):
    """A negation-free program was required but the program uses negation."""

    exit_code = 4


class BudgetError(GpdbError):
    exit_code = 5


class DivergenceError(GpdbError):
    exit_code = 6
