from rosi.errors import RosiError


class ProviderError(RosiError):
    """Raised when a provider cannot produce a snapshot."""


class ProviderUnavailable(ProviderError):
    """
    The OS facility behind a relation does not exist on this platform
    (e.g. no user account database, no per-process I/O accounting).
    """


class FixtureReadError(ProviderError):
    """A fixture directory is unreadable or one of its headers is malformed or conflicting."""
