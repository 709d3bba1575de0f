from typing import Any, Mapping

from rosi.errors import RosiError


class SnapshotError(RosiError):
    """Base class for snapshot persistence errors."""


class SnapshotIoError(SnapshotError):
    """The snapshot directory or one of its files could not be read or written."""


class DuplicateRelationName(SnapshotError):
    """Two relations passed to one save share a name."""


class FormatError(SnapshotError):
    """
    A `.rel` file violates the format. `line` is 1-based; the header is line 1.
    """
    file: str
    line: int

    def __init__(self, message: str, file: str, line: int, details: Mapping[str, Any] | None = None) -> None:
        super().__init__(message, details)
        self.file = file
        self.line = line

    def location(self) -> str | None:
        return f"{self.file}:{self.line}"
