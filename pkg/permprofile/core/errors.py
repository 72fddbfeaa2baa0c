"""
Exception hierarchy shared by every permprofile module.

Each failure mode gets its own small class so callers (and the CLI) can
catch exactly what they expect.
"""


class ProfileError(Exception):
    """Base class for every domain failure raised by permprofile."""

    pass


class InvalidWordError(ProfileError):
    """Raised when a word or permutation has repeated or out-of-range letters."""

    pass


class ArityError(ProfileError):
    """Raised when the number or shape of arguments does not match."""

    pass


class DomainError(ProfileError):
    """Raised when a numeric argument lies outside the operation's domain."""

    pass


class ResourceError(ProfileError):
    """Raised when an exhaustive computation would exceed its configured budget."""

    pass


class BoundsError(ProfileError):
    """Raised when a matrix position lies outside the requested shape."""

    pass


class MatrixFormatError(ProfileError):
    """Raised when matrix text or JSON cannot be parsed."""

    pass


class ShapeError(ProfileError):
    """Raised when a walk is requested for a graph of the wrong shape."""

    pass


class ParityError(ProfileError):
    """Raised when a cycle carries an odd number of -1 entries."""

    pass


class WalkError(ProfileError):
    """Raised when a cell walk breaks the succession rules."""

    def __init__(self, message: str, index: int = -1):
        super().__init__(message)
        self.index = index


class ConsistencyError(ProfileError):
    """Raised when batch insertion finds no feasible slot."""

    pass


class WordParseError(ProfileError):
    """Raised when a letter word uses letters outside its alphabet."""

    pass
