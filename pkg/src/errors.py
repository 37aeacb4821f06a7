class QSymError(Exception):
    """Base class for every error raised by the library."""


class DomainError(QSymError, ValueError):
    """An argument lies outside the domain of the operation."""


class TruncationError(QSymError):
    """Expansion requested with a degree bound below the element's degree."""


class NotInSpanError(QSymError):
    """Conversion target basis does not span the element.

    ``residual`` is the part of the element that cannot be expressed.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ParseError(QSymError):
    def __init__(self, message, text="", position=None):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(message)

    def __str__(self):
        if self.position is None:
            return self.message
        return f"{self.message} at column {self.position[0] + 1}"

    def highlight(self):
        """Return the source line with a caret marker under the offending span."""
        if self.position is None:
            return ""
        start, end = self.position
        marker = " " * start + "^" * max(1, end - start)
        return f"  {self.text}\n  {marker}"
