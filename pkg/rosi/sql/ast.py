from dataclasses import dataclass, field
from typing import Literal as TypingLiteral

from rosi.catalog.types import Value

# Expressions


@dataclass(frozen=True, slots=True, kw_only=True)
class Expr:
    """
    Base class for predicate expressions.

    `offset` is the byte offset of the node in the query text; it takes no part in equality.
    """
    offset: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, slots=True)
class Column(Expr):
    name: str


@dataclass(frozen=True, slots=True)
class Literal(Expr):
    """
    A literal value: None (NULL), bool, int or str.
    """
    value: Value


CompareOp = TypingLiteral["=", "<>", "<", "<=", ">", ">="]

COMPARE_OPS: tuple[str, ...] = ("=", "<>", "<", "<=", ">", ">=")


@dataclass(frozen=True, slots=True)
class Compare(Expr):
    """
    Examples:
      uid = 0
      size_bytes > 5
      0 = uid
    """
    op: CompareOp
    lhs: Column | Literal
    rhs: Column | Literal


@dataclass(frozen=True, slots=True)
class Like(Expr):
    """
    column LIKE 'pattern' with `%` (any run) and `_` (one character); case-sensitive, no escape.
    """
    column: Column
    pattern: str


@dataclass(frozen=True, slots=True)
class IsNull(Expr):
    column: Column
    negated: bool = False


@dataclass(frozen=True, slots=True)
class And(Expr):
    items: tuple[Expr, ...]


@dataclass(frozen=True, slots=True)
class Or(Expr):
    items: tuple[Expr, ...]


@dataclass(frozen=True, slots=True)
class Not(Expr):
    item: Expr

# Statement


@dataclass(frozen=True, slots=True)
class Star:
    """`SELECT *`"""


STAR = Star()


@dataclass(frozen=True, slots=True)
class OrderKey:
    column: str
    descending: bool = False


@dataclass(frozen=True, slots=True)
class SelectStmt:
    """
    Parsed query.

    `from_` is None when the query omits FROM; such queries go through
    universal-relation inference and never carry a STAR projection.
    """
    projection: Star | tuple[str, ...]
    from_: tuple[str, ...] | None = None
    where: Expr | None = None
    order_by: tuple[OrderKey, ...] = ()
    limit: int | None = None
    distinct: bool = False

    @property
    def is_star(self) -> bool:
        return isinstance(self.projection, Star)

# Helpers


def conjuncts(expr: Expr | None) -> tuple[Expr, ...]:
    """
    Flatten top-level AND nodes into a list of conjuncts.
    """
    if expr is None:
        return ()
    if isinstance(expr, And):
        out: list[Expr] = []
        for item in expr.items:
            out.extend(conjuncts(item))
        return tuple(out)
    return (expr,)


def conjoin(items: tuple[Expr, ...] | list[Expr]) -> Expr | None:
    """
    Inverse of `conjuncts`: None for no items, the item itself for one, And otherwise.
    """
    items = tuple(items)
    if not items:
        return None
    if len(items) == 1:
        return items[0]
    return And(items=items)


def referenced_columns(expr: Expr | None) -> tuple[str, ...]:
    """
    Column names referenced by `expr`, in first-occurrence order.
    """
    seen: dict[str, None] = {}

    def walk(e: Expr) -> None:
        if isinstance(e, Column):
            seen.setdefault(e.name, None)
        elif isinstance(e, Compare):
            walk(e.lhs)
            walk(e.rhs)
        elif isinstance(e, (Like, IsNull)):
            walk(e.column)
        elif isinstance(e, (And, Or)):
            for item in e.items:
                walk(item)
        elif isinstance(e, Not):
            walk(e.item)

    if expr is not None:
        walk(expr)
    return tuple(seen)


def contains_or(expr: Expr) -> bool:
    if isinstance(expr, Or):
        return True
    if isinstance(expr, And):
        return any(contains_or(x) for x in expr.items)
    if isinstance(expr, Not):
        return contains_or(expr.item)
    return False
