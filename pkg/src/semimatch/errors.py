"""Exception types raised by the library."""


class SemiMatchingError(Exception):
    """Base class for all library errors."""


class InvalidVertex(SemiMatchingError, ValueError):
    pass


class DuplicateEdge(SemiMatchingError, ValueError):
    def __init__(self, u, v, line=None):
        self.u, self.v, self.line = u, v, line
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"duplicate edge ({u}, {v}){where}")


class NotAlternating(SemiMatchingError, ValueError):
    pass


class CapacityExhausted(SemiMatchingError, ValueError):
    pass


class PhaseOnMaximum(SemiMatchingError, RuntimeError):
    """A phase was requested although no augmenting path exists."""


class TooLarge(SemiMatchingError, ValueError):
    pass


class NotLarger(SemiMatchingError, ValueError):
    pass


class InvalidMatching(SemiMatchingError, ValueError):
    pass


class UnsaturatableU(SemiMatchingError, ValueError):
    """Some U-vertex has no neighbour, so no semi-matching covers U."""


class ParseError(SemiMatchingError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
