"""
Logical plan nodes.

Every node derives its output schema at construction time, bottom-up, and
refuses to be built over a child that lacks a referenced column.
"""
from dataclasses import dataclass, field
from typing import Iterator, Union

from rosi.catalog.types import Attribute, RelationSchema
from rosi.planner.errors import PlanError
from rosi.sql.ast import Expr, OrderKey, referenced_columns

RESULT_NAME = "result"


def derived_schema(attributes: tuple[Attribute, ...], name: str = RESULT_NAME) -> RelationSchema:
    return RelationSchema(name=name, attributes=attributes, key=tuple(a.name for a in attributes))


def _require(schema: RelationSchema, columns: tuple[str, ...], node: str) -> None:
    missing = [c for c in columns if not schema.has(c)]
    if missing:
        raise PlanError(
            f"{node} references column(s) missing from its input: {', '.join(missing)}",
            details={"node": node, "missing": missing, "available": list(schema.names)},
        )


@dataclass(frozen=True, slots=True)
class Scan:
    relation: str
    schema: RelationSchema
    pushed: Expr | None = None

    def __post_init__(self) -> None:
        _require(self.schema, referenced_columns(self.pushed), "Scan")

    @property
    def output(self) -> RelationSchema:
        return self.schema


@dataclass(frozen=True, slots=True)
class Filter:
    expr: Expr
    child: "Plan"
    output: RelationSchema = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        _require(self.child.output, referenced_columns(self.expr), "Filter")
        object.__setattr__(self, "output", self.child.output)


@dataclass(frozen=True, slots=True)
class Project:
    columns: tuple[str, ...]
    child: "Plan"
    output: RelationSchema = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        source = self.child.output
        _require(source, self.columns, "Project")
        attrs = tuple(source.attributes[source.index_of(c)] for c in self.columns)
        object.__setattr__(self, "output", derived_schema(attrs))


@dataclass(frozen=True, slots=True)
class NaturalJoin:
    """
    Joins on every shared attribute name. Output is the left attributes
    followed by the right attributes that are not shared.
    """
    left: "Plan"
    right: "Plan"
    output: RelationSchema = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        left, right = self.left.output, self.right.output
        if not left.attribute_set & right.attribute_set:
            raise PlanError("NaturalJoin inputs share no attribute")
        attrs = left.attributes + tuple(a for a in right.attributes if not left.has(a.name))
        object.__setattr__(self, "output", derived_schema(attrs))

    @property
    def shared(self) -> tuple[str, ...]:
        right = self.right.output
        return tuple(n for n in self.left.output.names if right.has(n))


@dataclass(frozen=True, slots=True)
class Sort:
    keys: tuple[OrderKey, ...]
    child: "Plan"

    def __post_init__(self) -> None:
        _require(self.child.output, tuple(k.column for k in self.keys), "Sort")

    @property
    def output(self) -> RelationSchema:
        return self.child.output


@dataclass(frozen=True, slots=True)
class Limit:
    n: int
    child: "Plan"

    @property
    def output(self) -> RelationSchema:
        return self.child.output


@dataclass(frozen=True, slots=True)
class Distinct:
    child: "Plan"

    @property
    def output(self) -> RelationSchema:
        return self.child.output


@dataclass(frozen=True, slots=True)
class UnionAll:
    """
    Concatenation of children with identical output columns.
    """
    children: tuple["Plan", ...]

    def __post_init__(self) -> None:
        if not self.children:
            raise PlanError("UnionAll needs at least one child")
        first = self.children[0].output.attributes
        for child in self.children[1:]:
            if child.output.attributes != first:
                raise PlanError("UnionAll children disagree on their output columns")

    @property
    def output(self) -> RelationSchema:
        return self.children[0].output


Plan = Union[Scan, Filter, Project, NaturalJoin, Sort, Limit, Distinct, UnionAll]

# Traversal


def children(plan: Plan) -> tuple[Plan, ...]:
    if isinstance(plan, Scan):
        return ()
    if isinstance(plan, NaturalJoin):
        return (plan.left, plan.right)
    if isinstance(plan, UnionAll):
        return plan.children
    return (plan.child,)


def walk(plan: Plan) -> Iterator[Plan]:
    """
    Pre-order traversal.
    """
    yield plan
    for child in children(plan):
        yield from walk(child)


def scans(plan: Plan) -> tuple[Scan, ...]:
    return tuple(node for node in walk(plan) if isinstance(node, Scan))
