from collections import defaultdict
from typing import Iterable, Iterator

from rosi.catalog.types import RelationSchema, Row
from rosi.executor.errors import NoSharedAttributes
from rosi.planner.plan import derived_schema
from rosi.providers.types import Relation


def join_schema(left: RelationSchema, right: RelationSchema) -> tuple[RelationSchema, tuple[str, ...]]:
    """
    Output schema (left attributes, then the right ones not shared) and the shared names in left order.

    Raises:
        NoSharedAttributes.
    """
    shared = tuple(n for n in left.names if right.has(n))
    if not shared:
        raise NoSharedAttributes(
            f"'{left.name}' and '{right.name}' share no attribute",
            details={"left": list(left.names), "right": list(right.names)},
        )
    attrs = left.attributes + tuple(a for a in right.attributes if not left.has(a.name))
    return derived_schema(attrs), shared


def hash_join(
    left: RelationSchema,
    right: RelationSchema,
    left_rows: Iterable[Row],
    right_rows: Iterable[Row],
) -> Iterator[Row]:
    """
    Build a hash table on the right input, then stream the left input through it.
    Rows with a NULL in any join column never match (NULL = NULL is UNKNOWN).
    """
    _, shared = join_schema(left, right)
    left_idx = [left.index_of(n) for n in shared]
    right_idx = [right.index_of(n) for n in shared]
    right_rest = [i for i, a in enumerate(right.attributes) if not left.has(a.name)]

    table: dict[tuple, list[tuple]] = defaultdict(list)
    for row in right_rows:
        key = tuple(row[i] for i in right_idx)
        if None in key:
            continue
        table[key].append(tuple(row[i] for i in right_rest))

    for row in left_rows:
        key = tuple(row[i] for i in left_idx)
        if None in key:
            continue
        for rest in table.get(key, ()):
            yield row + rest


def natural_join(left: Relation, right: Relation) -> Relation:
    """
    Raises:
        NoSharedAttributes.
    """
    schema, _ = join_schema(left.schema, right.schema)
    return Relation(schema=schema, rows=tuple(hash_join(left.schema, right.schema, left.rows, right.rows)))
