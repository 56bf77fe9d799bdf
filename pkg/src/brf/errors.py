"""Exception types raised across the package."""


class BRFError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInstance(BRFError):
    pass


class MissingPoint(BRFError, KeyError):
    pass


class NoWitness(BRFError):
    pass


class EmptyChainIntersection(BRFError):
    pass


class IllegalFlip(BRFError, ValueError):
    pass


class EmptyRange(BRFError):
    pass


class InvariantViolation(BRFError, AssertionError):
    """An internal invariant that the algorithm guarantees was observed broken."""


class RestrictedRegionUnsupported(BRFError):
    pass


class NotPermutation(BRFError):
    pass


class DuplicateCorner(BRFError, ValueError):
    pass


class TooLarge(BRFError):
    pass


class DocumentError(BRFError, ValueError):
    """Malformed instance or solution document.

    ``field`` is a JSON-path-like locator (``"A[3][1]"``) and ``line`` the
    1-based line number when known.
    """

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
