"""Exception types shared across modules; the CLI maps them to exit codes."""


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class EnumerationCapError(RuntimeError):
    """Poset enumeration exceeded the configured element cap."""


class InvariantError(AssertionError):
    """A structural property that the theory guarantees did not hold."""


class RealizationError(RuntimeError):
    """Interval realization of S(a) failed verification."""

    def __init__(self, message: str, counterexample: dict | None = None):
        super().__init__(message)
        self.counterexample = counterexample or {}
