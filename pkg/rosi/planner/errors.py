from typing import Any, Mapping

from rosi.errors import QueryError


class PlanError(QueryError):
    """
    Base class for semantic errors found while planning a query.

    `offset` points at the offending token when the planner knows it.
    """
    offset: int | None

    def __init__(self, message: str, offset: int | None = None, details: Mapping[str, Any] | None = None) -> None:
        super().__init__(message, details)
        self.offset = offset

    def location(self) -> str | None:
        return None if self.offset is None else f"offset {self.offset}"


class UnknownColumn(PlanError):
    """
    A column is not produced by the relations in scope.

    `candidates` lists the catalog relations that do have it.
    """
    column: str
    candidates: tuple[str, ...]

    def __init__(
        self,
        message: str,
        column: str,
        candidates: tuple[str, ...] = (),
        offset: int | None = None,
    ) -> None:
        super().__init__(message, offset, details={"column": column, "candidates": list(candidates)})
        self.column = column
        self.candidates = candidates


class AmbiguityUnsupported(PlanError):
    """The FROM list would need a cross product or a self-join."""


class TypeMismatch(PlanError):
    """A comparison or LIKE mixes incompatible types."""


class DuplicateColumn(PlanError):
    """The projection names a column more than once."""


class InvalidOrderBy(PlanError):
    """ORDER BY names a column the (set-semantic) result does not carry."""
