"""Exception hierarchy shared across the package."""


class GamesightError(Exception):
    """Base class for every error raised by this package."""


class RuleError(GamesightError):
    """A game rule forbids the requested action (e.g. skip in the memory game)."""


class PreconditionError(GamesightError):
    """Operation invoked on a state that does not admit it (e.g. move on a won game)."""


class InputError(GamesightError):
    """Malformed or out-of-domain argument (unknown block id, bad slot index, ...)."""


class WalletError(GamesightError):
    """Skip requested with an empty token wallet."""


class LevelError(GamesightError):
    """Level definition violates its invariants."""


class CapacityError(GamesightError):
    """Search exceeded the configured state-space cap."""

    def __init__(self, cap: int):
        super().__init__(f"state-space cap exceeded ({cap} states)")
        self.cap = cap


class SequenceError(GamesightError):
    """Event sequence number gap or regression."""


class LifecycleError(GamesightError):
    """Session lifecycle violation (write after finalize, double finalize, ...)."""


class IntegrityError(GamesightError):
    """Stored or imported data fails a structural check."""


class ContaminationError(GamesightError):
    """Non-behavioral column present where only gameplay features are allowed."""

    def __init__(self, columns):
        cols = ", ".join(sorted(columns))
        super().__init__(f"non-behavioral columns present: {cols}")
        self.columns = tuple(sorted(columns))


class DegenerateLabelsError(GamesightError):
    """Training labels contain a single class."""


class UndefinedCorrelationError(GamesightError):
    """Pearson correlation requested for a constant input."""
