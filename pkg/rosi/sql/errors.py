from typing import Any, Mapping

from rosi.errors import QueryError


class SqlError(QueryError):
    """
    Base class for lexing/parsing errors. `offset` is a 0-based byte offset into the query text.
    """
    offset: int

    def __init__(self, message: str, offset: int, details: Mapping[str, Any] | None = None) -> None:
        super().__init__(message, details)
        self.offset = offset

    def location(self) -> str | None:
        return f"offset {self.offset}"


class LexError(SqlError):
    """Raised on an unterminated string literal or an illegal character."""


class ParseError(SqlError):
    """
    Raised on any grammar violation. `expected` lists what the parser would have accepted.
    """
    expected: tuple[str, ...]

    def __init__(
        self,
        message: str,
        offset: int,
        expected: tuple[str, ...] = (),
        details: Mapping[str, Any] | None = None,
    ) -> None:
        super().__init__(message, offset, details)
        self.expected = expected
