from dataclasses import dataclass
from enum import auto
from typing import Any, Iterable

from rosi.catalog.types import RelationSchema, Row, Value
from rosi.utils.compat import Self
from rosi.utils.enum import StrEnum


class ProviderMode(StrEnum):
    LIVE = auto()
    FIXTURE = auto()

# Canonical ordering


def value_sort_key(value: Value) -> tuple[int, Any]:
    """
    NULL first, then BOOL false < true, INT/TIMESTAMP numerically, TEXT bytewise (UTF-8).
    """
    if value is None:
        return (0, 0)
    if isinstance(value, bool):
        return (1, int(value))
    if isinstance(value, str):
        return (1, value.encode("utf-8", "surrogatepass"))
    return (1, value)


def row_sort_key(row: Row) -> tuple[tuple[int, Any], ...]:
    return tuple(value_sort_key(v) for v in row)

# Relation


@dataclass(frozen=True, slots=True)
class Relation:
    """
    A schema plus a bag of rows positionally aligned with it.

    Relations are immutable and may be handed across threads.
    """
    schema: RelationSchema
    rows: tuple[Row, ...] = ()

    @classmethod
    def of(cls, schema: RelationSchema, rows: Iterable[Iterable[Value]]) -> Self:
        return cls(schema=schema, rows=tuple(tuple(r) for r in rows))

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def name(self) -> str:
        return self.schema.name

    @property
    def columns(self) -> tuple[str, ...]:
        return self.schema.names

    def sorted_rows(self) -> tuple[Row, ...]:
        return tuple(sorted(self.rows, key=row_sort_key))

    def column(self, name: str) -> tuple[Value, ...]:
        idx = self.schema.index_of(name)
        return tuple(r[idx] for r in self.rows)

    def type_errors(self) -> list[str]:
        """
        Rows violating arity or the column types; empty when the relation is well-typed.
        """
        errors: list[str] = []
        width = len(self.schema.attributes)
        for n, row in enumerate(self.rows):
            if len(row) != width:
                errors.append(f"row {n}: {len(row)} values for {width} attributes")
                continue
            for attr, value in zip(self.schema.attributes, row):
                if not attr.type.accepts(value):
                    errors.append(f"row {n}: {attr.name} expects {attr.type.value}, got {value!r}")
        return errors
