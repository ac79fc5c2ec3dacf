"""Exception hierarchy shared by every package."""


class LocalGlobalError(Exception):
    """Root of all errors raised by the toolkit."""


class InvalidInputError(LocalGlobalError, ValueError):
    """A precondition of a public operation is violated."""


class BadPlaceError(InvalidInputError):
    """Reduction was requested at a place that is not good for the group."""


class ContextMismatchError(InvalidInputError):
    """Elements of two different groups were combined."""


class CapExceededError(InvalidInputError):
    """An input lies beyond a configured desk-scale cap."""


class InternalConsistencyError(LocalGlobalError, RuntimeError):
    """A mathematical invariant that the code relies on did not hold."""
