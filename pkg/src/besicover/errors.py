"""Exception types raised across the package."""


class BesicoverError(Exception):
    """Base class for all package errors."""


class SpaceParseError(BesicoverError, ValueError):
    """A space file could not be read.

    ``line``/``column`` locate JSON syntax errors; for a malformed distance
    entry they are the row and column of the table instead.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class NotAMetric(BesicoverError, ValueError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotUltrametric(BesicoverError):
    pass


class CoverIncomplete(BesicoverError):
    """The supplied ball family does not cover (or is not centered on) the target set."""


class BoundViolated(BesicoverError):
    """A theoretical bound failed, meaning the supplied constant was not valid for the space."""


class RadiusOutOfRange(BesicoverError, ValueError):
    pass


class PreconditionViolated(BesicoverError, ValueError):
    pass


class UnknownCase(BesicoverError, KeyError):
    pass
