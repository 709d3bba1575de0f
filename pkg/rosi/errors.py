from typing import Any, Mapping


class RosiError(Exception):
    """
    Base class for all errors raised by rosi.

    These errors are surfaced to users as diagnostics, never as tracebacks.
    """
    message: str
    details: Mapping[str, Any] | None = None

    def __init__(self, message: str, details: Mapping[str, Any] | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def location(self) -> str | None:
        return None

    def __str__(self) -> str:
        loc = self.location()
        if loc:
            return f"{loc}: {self.message}"
        return self.message


class QueryError(RosiError):
    """
    Marker base: the query itself is wrong (lexing, parsing, planning).

    Everything else deriving from RosiError is an environment or runtime failure.
    """
