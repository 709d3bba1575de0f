from rosi.catalog.types import Value
from rosi.sql.ast import And, Column, Compare, Expr, IsNull, Like, Literal, Not, Or, SelectStmt


def render_value(value: Value) -> str:
    if value is None:
        return "NULL"
    if value is True:
        return "TRUE"
    if value is False:
        return "FALSE"
    if isinstance(value, str):
        return quote_string(value)
    return str(value)


def quote_string(text: str) -> str:
    return "'" + text.replace("'", "''") + "'"


def _needs_parens(child: Expr, parent: Expr | None) -> bool:
    if parent is None:
        return False
    if isinstance(child, Or):
        return isinstance(parent, (And, Or, Not))
    if isinstance(child, And):
        return isinstance(parent, (And, Not))
    if isinstance(child, Not):
        return isinstance(parent, Not)
    return False


def render_expr(expr: Expr, parent: Expr | None = None) -> str:
    """
    Canonical text for an expression; reparsing it yields an equal tree.
    """
    if isinstance(expr, Column):
        text = expr.name
    elif isinstance(expr, Literal):
        text = render_value(expr.value)
    elif isinstance(expr, Compare):
        text = f"{render_expr(expr.lhs)} {expr.op} {render_expr(expr.rhs)}"
    elif isinstance(expr, Like):
        text = f"{expr.column.name} LIKE {quote_string(expr.pattern)}"
    elif isinstance(expr, IsNull):
        text = f"{expr.column.name} IS {'NOT ' if expr.negated else ''}NULL"
    elif isinstance(expr, And):
        text = " AND ".join(render_expr(x, expr) for x in expr.items)
    elif isinstance(expr, Or):
        text = " OR ".join(render_expr(x, expr) for x in expr.items)
    elif isinstance(expr, Not):
        text = f"NOT {render_expr(expr.item, expr)}"
    else:
        raise TypeError(f"Unsupported expression node: {type(expr).__name__}")

    return f"({text})" if _needs_parens(expr, parent) else text


def render_query(stmt: SelectStmt) -> str:
    parts = ["SELECT"]
    if stmt.distinct:
        parts.append("DISTINCT")
    parts.append("*" if stmt.is_star else ", ".join(stmt.projection))  # type: ignore[arg-type]
    if stmt.from_ is not None:
        parts.append("FROM " + ", ".join(stmt.from_))
    if stmt.where is not None:
        parts.append("WHERE " + render_expr(stmt.where))
    if stmt.order_by:
        keys = ", ".join(f"{k.column} DESC" if k.descending else k.column for k in stmt.order_by)
        parts.append("ORDER BY " + keys)
    if stmt.limit is not None:
        parts.append(f"LIMIT {stmt.limit}")
    return " ".join(parts)
