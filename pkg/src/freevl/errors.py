"""Exception hierarchy shared by every module."""


class FreeVLError(Exception):
    """Base class for errors raised by freevl."""


class ExprSyntaxError(FreeVLError, ValueError):
    """Malformed expression text.

    ``pos`` is the 0-based character offset of the offending token and
    ``expected`` lists what the parser would have accepted there.
    """

    def __init__(self, message, pos=None, expected=()):
        self.pos = pos
        self.expected = tuple(expected)
        detail = message
        if pos is not None:
            detail += f" at position {pos}"
        if self.expected:
            detail += f" (expected {', '.join(self.expected)})"
        super().__init__(detail)


class DimensionMismatch(FreeVLError, ValueError):
    pass


class ResourceLimit(FreeVLError, RuntimeError):
    pass


class NotSeparating(FreeVLError, ValueError):
    pass


class UnknownLabel(FreeVLError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class MalformedBall(FreeVLError, ValueError):
    pass
