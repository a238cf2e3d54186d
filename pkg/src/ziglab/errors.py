"""Exception hierarchy shared by the library and the CLI."""


class ZiglabError(Exception):
    """Base class for all ziglab errors."""


class UsageError(ZiglabError, ValueError):
    """Bad arguments: violated preconditions, unparsable input, over-limit sizes."""


class DomainError(ZiglabError, ValueError):
    """Argument is well-formed but outside the set the operation is defined on."""


class InvariantViolation(ZiglabError, AssertionError):
    """A proven mathematical invariant failed to hold. Never expected to fire."""
