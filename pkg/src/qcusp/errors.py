"""Exception types shared across the package."""


class QcuspError(Exception):
    """Base class for all errors raised by this package."""


class ContextMismatchError(QcuspError):
    """Operands were built over different coefficient ring contexts."""


class DepthError(QcuspError):
    """A p-power root of unity or of q beyond the representable depth was needed."""


class NotInvertibleError(QcuspError):
    """Inversion of a non-unit was requested."""


class DomainError(QcuspError):
    """The input lies outside the domain of the operation."""


class SeriesFileError(QcuspError):
    """A series file failed to parse or violated its own header."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where = f" ({where})"
        super().__init__(message + where)
