"""Exception hierarchy shared by all matchers."""


class TermMatchError(Exception):
    """Base class for every error raised by this package."""


class MalformedTermError(TermMatchError, ValueError):
    """An application violates the arity of its operation."""


class ShapeError(MalformedTermError):
    """A sequence ended up where exactly one term is required."""


class IncompleteSubstitutionError(TermMatchError, KeyError):
    """A pattern variable has no binding."""


class InvalidSubjectError(TermMatchError, ValueError):
    """Subjects must be ground, i.e. free of wildcards."""


class UnsupportedPatternError(TermMatchError, ValueError):
    pass


class NetTooLargeError(TermMatchError, RuntimeError):
    pass


class NonTerminationError(TermMatchError, RuntimeError):
    """Rewriting hit the iteration limit.

    The last intermediate term is available as ``term``.
    """

    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class ParseError(TermMatchError, ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class NetFormatError(TermMatchError, ValueError):
    pass
