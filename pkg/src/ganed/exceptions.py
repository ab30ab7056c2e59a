"""Exception hierarchy shared across the package."""


class GanedError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GanedError, ValueError):
    """An argument violates a documented precondition."""


class UnknownGlyphError(ValidationError):
    def __init__(self, glyph, position):
        self.glyph = glyph
        self.position = position
        super().__init__(f"unknown glyph {glyph!r} at position {position}")


class AlphabetMismatchError(ValidationError):
    pass


class LengthMismatchError(ValidationError):
    pass


class UnevaluatedFitnessError(GanedError):
    pass


class DataError(GanedError):
    """Malformed or unreadable input data."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where += f"{path}"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}" if where else message)


class ExperimentError(GanedError):
    """A row of an experiment failed; carries the row context."""
