"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when an operation receives input violating its preconditions."""


class NotAWalkError(InputError):
    """Raised when a vertex sequence has a consecutive nonadjacent pair."""

    def __init__(self, u: int, v: int):
        super().__init__(f"vertices {u} and {v} are consecutive but nonadjacent")
        self.pair = (u, v)


class StrongDigraphError(InputError):
    """Raised when a non-strong digraph is required but a strong one was given."""


class OracleBoundError(InputError):
    """Raised when an instance exceeds the oracle's exhaustive-search bound."""


class InternalVerificationError(RuntimeError):
    """A solver produced a certificate that failed its own re-verification.

    This always indicates a bug, never bad input.
    """
