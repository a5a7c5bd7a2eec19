"""Exception hierarchy for hyperkube."""


class HyperkubeError(Exception):
    """Base class for every error raised by this package."""


class InvalidKeyword(HyperkubeError, ValueError):
    pass


class EmptyKeywordSet(HyperkubeError, ValueError):
    pass


class InvalidDimension(HyperkubeError, ValueError):
    pass


class DimensionMismatch(HyperkubeError, ValueError):
    pass


class NotInSubHypercube(HyperkubeError, ValueError):
    pass


class InvalidObjectRef(HyperkubeError, ValueError):
    pass


class WrongOwner(HyperkubeError, ValueError):
    """A keyword set was handed to a node that is not responsible for it."""


class FixtureError(HyperkubeError):
    """Problem in a fixture file; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(FixtureError):
    pass


class InvalidRoot(FixtureError):
    pass


class EmptyKeywords(FixtureError):
    pass


class InsufficientData(HyperkubeError, ValueError):
    pass


class ResourceLimitExceeded(HyperkubeError):
    pass
