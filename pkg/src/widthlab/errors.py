"""Exception hierarchy shared by every widthlab module."""


class WidthLabError(Exception):
    """Base class; ``exit_code`` is what the CLI returns when it escapes."""

    exit_code = 1


class ResourceCap(WidthLabError):
    exit_code = 4


class ParseError(WidthLabError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
        self.line = line
        self.column = column


class PreconditionViolated(WidthLabError):
    exit_code = 3


class NoRefutation(PreconditionViolated):
    """Raised by width computations when the source maps to the target."""

    def __init__(self, message, homomorphism=None):
        super().__init__(message)
        self.homomorphism = homomorphism


class Not4Chromatic(PreconditionViolated):
    pass


class NoWitness(PreconditionViolated):
    pass


class NotATree(PreconditionViolated):
    pass


class PrecolorOverCapacity(PreconditionViolated):
    pass


class UnreachablePosition(WidthLabError):
    pass


class UnknownFamily(WidthLabError):
    exit_code = 3


class BadParams(WidthLabError):
    exit_code = 3


class RetryExhausted(WidthLabError):
    exit_code = 4


class BoundViolation(WidthLabError):
    """A proven bound failed: always a solver bug, carries a forensic dump."""

    def __init__(self, message, dump=None):
        super().__init__(message)
        self.dump = dump or {}
