"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """Raised when an input violates the precondition of a computation.

    The CLI maps this to exit status 3.
    """


class ConsistencyError(AssertionError):
    """Raised when an identity that must hold by theorem fails.

    Seeing one of these means the implementation is wrong, not the input.
    """
