from rosi.errors import RosiError


class ExecutorError(RosiError):
    """Raised when a plan cannot be evaluated."""


class NoSharedAttributes(ExecutorError):
    """A natural join was requested between relations that share no attribute name."""
