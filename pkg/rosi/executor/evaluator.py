import re
from functools import lru_cache
from typing import Any, Callable

from rosi.catalog.types import RelationSchema, Row, Value
from rosi.sql.ast import And, Column, Compare, Expr, IsNull, Like, Literal, Not, Or
from rosi.utils.enum import StrEnum

# Three-valued logic


class TruthValue(StrEnum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @staticmethod
    def of(flag: bool) -> "TruthValue":
        return TruthValue.TRUE if flag else TruthValue.FALSE

    def not_(self) -> "TruthValue":
        if self is TruthValue.UNKNOWN:
            return self
        return TruthValue.FALSE if self is TruthValue.TRUE else TruthValue.TRUE

    def and_(self, other: "TruthValue") -> "TruthValue":
        if self is TruthValue.FALSE or other is TruthValue.FALSE:
            return TruthValue.FALSE
        if self is TruthValue.UNKNOWN or other is TruthValue.UNKNOWN:
            return TruthValue.UNKNOWN
        return TruthValue.TRUE

    def or_(self, other: "TruthValue") -> "TruthValue":
        if self is TruthValue.TRUE or other is TruthValue.TRUE:
            return TruthValue.TRUE
        if self is TruthValue.UNKNOWN or other is TruthValue.UNKNOWN:
            return TruthValue.UNKNOWN
        return TruthValue.FALSE


TRUE = TruthValue.TRUE
FALSE = TruthValue.FALSE
UNKNOWN = TruthValue.UNKNOWN

# LIKE


@lru_cache(maxsize=256)
def _like_regex(pattern: str) -> re.Pattern[str]:
    parts: list[str] = []
    for ch in pattern:
        if ch == "%":
            parts.append(".*")
        elif ch == "_":
            parts.append(".")
        else:
            parts.append(re.escape(ch))
    return re.compile("".join(parts), re.DOTALL)


def like_match(subject: str, pattern: str) -> bool:
    """
    `%` matches any run (including empty), `_` exactly one character; case-sensitive, whole-string.
    """
    return _like_regex(pattern).fullmatch(subject) is not None


def like_prefix(pattern: str) -> str:
    """
    The literal prefix of a LIKE pattern (everything before the first wildcard).
    """
    for i, ch in enumerate(pattern):
        if ch in "%_":
            return pattern[:i]
    return pattern

# Comparison


def _cmp(op: str, left: Any, right: Any) -> bool:
    if op == "=":
        return bool(left == right)
    if op == "<>":
        return bool(left != right)
    if op == "<":
        return bool(left < right)
    if op == "<=":
        return bool(left <= right)
    if op == ">":
        return bool(left > right)
    if op == ">=":
        return bool(left >= right)
    raise ValueError(f"Unsupported operator: {op!r}")

# Compiler

PredicateFn = Callable[[Row], TruthValue]
ValueFn = Callable[[Row], Value]


def _compile_operand(operand: Expr, schema: RelationSchema) -> ValueFn:
    if isinstance(operand, Column):
        idx = schema.index_of(operand.name)
        return lambda row: row[idx]
    if isinstance(operand, Literal):
        value = operand.value
        return lambda row: value
    raise TypeError(f"Unsupported operand: {type(operand).__name__}")


def compile_predicate(expr: Expr, schema: RelationSchema) -> PredicateFn:
    """
    Compile an expression into a callable evaluated with three-valued logic against rows of `schema`.

    Raises:
        KeyError if the expression references a column that `schema` lacks.
    """
    if isinstance(expr, And):
        items = [compile_predicate(x, schema) for x in expr.items]

        def conj(row: Row) -> TruthValue:
            result = TRUE
            for p in items:
                result = result.and_(p(row))
                if result is FALSE:
                    return FALSE
            return result
        return conj

    if isinstance(expr, Or):
        items = [compile_predicate(x, schema) for x in expr.items]

        def disj(row: Row) -> TruthValue:
            result = FALSE
            for p in items:
                result = result.or_(p(row))
                if result is TRUE:
                    return TRUE
            return result
        return disj

    if isinstance(expr, Not):
        inner = compile_predicate(expr.item, schema)
        return lambda row: inner(row).not_()

    if isinstance(expr, Compare):
        lhs = _compile_operand(expr.lhs, schema)
        rhs = _compile_operand(expr.rhs, schema)
        op = expr.op

        def compare(row: Row) -> TruthValue:
            a, b = lhs(row), rhs(row)
            if a is None or b is None:
                return UNKNOWN
            return TruthValue.of(_cmp(op, a, b))
        return compare

    if isinstance(expr, Like):
        idx = schema.index_of(expr.column.name)
        regex = _like_regex(expr.pattern)

        def like(row: Row) -> TruthValue:
            value = row[idx]
            if value is None:
                return UNKNOWN
            return TruthValue.of(regex.fullmatch(str(value)) is not None)
        return like

    if isinstance(expr, IsNull):
        idx = schema.index_of(expr.column.name)
        negated = expr.negated
        return lambda row: TruthValue.of((row[idx] is None) != negated)

    if isinstance(expr, (Column, Literal)):
        # a bare operand used as a condition (BOOL column / literal)
        fn = _compile_operand(expr, schema)

        def bare(row: Row) -> TruthValue:
            value = fn(row)
            return UNKNOWN if value is None else TruthValue.of(bool(value))
        return bare

    raise TypeError(f"Unsupported expression node: {type(expr).__name__}")


def eval_expr(expr: Expr, row: Row, schema: RelationSchema) -> TruthValue:
    """
    Evaluate `expr` on one row. Comparisons against NULL are UNKNOWN; IS [NOT] NULL never is.
    """
    return compile_predicate(expr, schema)(row)
