"""Exception hierarchy shared by all lineswitch modules."""


class LineSwitchError(Exception):
    """Base class for every error raised by this package."""


class BadInputError(LineSwitchError):
    """User-supplied data is invalid (parse errors, bad preconditions)."""


class FormatError(BadInputError):
    """Malformed point-set or certificate text."""


class DuplicatePointError(BadInputError):
    """A point set contains the same point twice."""


class IdenticalPointsError(BadInputError):
    """Two identical points do not determine a line."""


class UnknownLineError(BadInputError):
    """A LineKey is not a connecting line of the board."""


class CollinearInputError(BadInputError):
    """A solver requiring a noncollinear point set got a collinear one."""


class PreconditionError(BadInputError):
    """An operation's documented precondition does not hold."""


class InfeasibleSpecError(BadInputError):
    """An instance generator cannot satisfy its spec (e.g. box too small)."""


class CapExceededError(LineSwitchError):
    """An exact computation was requested above its enumeration cap."""

    def __init__(self, message: str, n: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.n = n
        self.cap = cap


class InternalInvariantError(LineSwitchError):
    """A guaranteed internal invariant failed; indicates a bug."""
