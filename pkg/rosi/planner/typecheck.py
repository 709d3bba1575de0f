"""
Type rules for predicates.

- Column vs column: identical types.
- Column vs literal: int literals fit INT and TIMESTAMP, strings fit TEXT,
  TRUE/FALSE fit BOOL, NULL fits anything.
- LIKE needs a TEXT column.
"""
from rosi.catalog.types import AttrType, RelationSchema, Value
from rosi.planner.errors import TypeMismatch
from rosi.sql.ast import And, Column, Compare, Expr, IsNull, Like, Literal, Not, Or
from rosi.sql.render import render_expr, render_value


def literal_types(value: Value) -> frozenset[AttrType] | None:
    """
    Types a literal is compatible with; None means any (NULL).
    """
    if value is None:
        return None
    if isinstance(value, bool):
        return frozenset({AttrType.BOOL})
    if isinstance(value, int):
        return frozenset({AttrType.INT, AttrType.TIMESTAMP})
    return frozenset({AttrType.TEXT})


def _describe(operand: Column | Literal, schema: RelationSchema) -> str:
    if isinstance(operand, Column):
        return f"{operand.name} ({schema.type_of(operand.name).value})"
    return render_value(operand.value)


def _compatible(lhs: Column | Literal, rhs: Column | Literal, schema: RelationSchema) -> bool:
    if isinstance(lhs, Column) and isinstance(rhs, Column):
        return schema.type_of(lhs.name) == schema.type_of(rhs.name)
    if isinstance(lhs, Literal) and isinstance(rhs, Literal):
        left, right = literal_types(lhs.value), literal_types(rhs.value)
        return left is None or right is None or bool(left & right)
    column, literal = (lhs, rhs) if isinstance(lhs, Column) else (rhs, lhs)
    assert isinstance(column, Column) and isinstance(literal, Literal)
    accepted = literal_types(literal.value)
    return accepted is None or schema.type_of(column.name) in accepted


def check_predicate(expr: Expr, schema: RelationSchema) -> None:
    """
    Raises:
        TypeMismatch on the first ill-typed comparison or LIKE, in reading order.
    """
    if isinstance(expr, (And, Or)):
        for item in expr.items:
            check_predicate(item, schema)
    elif isinstance(expr, Not):
        check_predicate(expr.item, schema)
    elif isinstance(expr, Compare):
        if not _compatible(expr.lhs, expr.rhs, schema):
            raise TypeMismatch(
                f"Cannot compare {_describe(expr.lhs, schema)} with {_describe(expr.rhs, schema)} "
                f"in {render_expr(expr)}",
                offset=expr.offset,
            )
    elif isinstance(expr, Like):
        column_type = schema.type_of(expr.column.name)
        if column_type is not AttrType.TEXT:
            raise TypeMismatch(
                f"LIKE needs a TEXT column, but {expr.column.name} is {column_type.value}",
                offset=expr.offset,
            )
    elif isinstance(expr, IsNull):
        pass
