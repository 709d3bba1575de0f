from collections import Counter
from dataclasses import dataclass
from typing import Protocol

from rosi.catalog.registry import attribute_homes, lookup_relation
from rosi.catalog.types import Catalog, RelationSchema
from rosi.planner.errors import AmbiguityUnsupported, DuplicateColumn, InvalidOrderBy, UnknownColumn
from rosi.planner.plan import Distinct, Filter, Limit, NaturalJoin, Plan, Project, Scan, Sort
from rosi.planner.typecheck import check_predicate
from rosi.sql.ast import And, Column, Compare, Expr, IsNull, Like, Not, Or, SelectStmt
from rosi.urm.window import window_plan

# Public protocol


class QueryPlanner(Protocol):
    def plan(self, stmt: SelectStmt, catalog: Catalog) -> Plan:
        raise NotImplementedError()


def plan_query(stmt: SelectStmt, catalog: Catalog) -> Plan:
    """
    Build the logical plan of a parsed statement (before predicate pushdown).

    Explicit FROM lists become a left-deep NaturalJoin chain in FROM order with
    WHERE as a Filter above it; FROM-less statements compile to a window plan.

    Raises:
        UnknownRelation, UnknownColumn, AmbiguityUnsupported, TypeMismatch,
        DuplicateColumn, InvalidOrderBy, UnknownAttribute, NoConnection.
    """
    return DefaultQueryPlanner().plan(stmt, catalog)


@dataclass(frozen=True, slots=True)
class DefaultQueryPlanner:

    def plan(self, stmt: SelectStmt, catalog: Catalog) -> Plan:
        _check_duplicate_columns(stmt)
        if stmt.from_ is None:
            return self._plan_window(stmt, catalog)
        return self._plan_from(stmt, catalog)

    def _plan_from(self, stmt: SelectStmt, catalog: Catalog) -> Plan:
        assert stmt.from_ is not None
        plan = _join_chain(stmt.from_, catalog)
        scope = plan.output

        if stmt.where is not None:
            _check_columns(_columns_with_offsets(stmt.where), scope, catalog)
        projection: tuple[str, ...] | None = None
        if not stmt.is_star:
            projection = stmt.projection  # type: ignore[assignment]
            _check_columns([(c, None) for c in projection], scope, catalog)
        _check_columns([(k.column, None) for k in stmt.order_by], scope, catalog)

        if stmt.where is not None:
            check_predicate(stmt.where, scope)
            plan = Filter(expr=stmt.where, child=plan)

        output = scope.names if projection is None else projection
        hidden = [k.column for k in stmt.order_by if k.column not in output]
        if hidden and stmt.distinct:
            raise InvalidOrderBy(
                f"ORDER BY column(s) {', '.join(hidden)} must appear in the SELECT DISTINCT list",
                details={"columns": hidden},
            )

        sorted_early = False
        if hidden:
            plan = Sort(keys=stmt.order_by, child=plan)
            sorted_early = True
        if projection is not None:
            plan = Project(columns=projection, child=plan)
        if stmt.distinct:
            plan = Distinct(child=plan)
        if stmt.order_by and not sorted_early:
            plan = Sort(keys=stmt.order_by, child=plan)
        if stmt.limit is not None:
            plan = Limit(n=stmt.limit, child=plan)
        return plan

    def _plan_window(self, stmt: SelectStmt, catalog: Catalog) -> Plan:
        attrs: tuple[str, ...] = stmt.projection  # type: ignore[assignment]
        hidden = [k.column for k in stmt.order_by if k.column not in attrs]
        if hidden:
            raise InvalidOrderBy(
                f"ORDER BY column(s) {', '.join(hidden)} must appear in the SELECT list of a query without FROM",
                details={"columns": hidden},
            )

        plan = window_plan(attrs, stmt.where, catalog)
        if stmt.order_by:
            plan = Sort(keys=stmt.order_by, child=plan)
        if stmt.limit is not None:
            plan = Limit(n=stmt.limit, child=plan)
        return plan

# Helpers


def _check_duplicate_columns(stmt: SelectStmt) -> None:
    if stmt.is_star:
        return
    counts = Counter(stmt.projection)  # type: ignore[arg-type]
    dupes = sorted(c for c, n in counts.items() if n > 1)
    if dupes:
        raise DuplicateColumn(f"Column(s) selected more than once: {', '.join(dupes)}", details={"columns": dupes})


def _join_chain(names: tuple[str, ...], catalog: Catalog) -> Plan:
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise AmbiguityUnsupported(
                f"Relation '{name}' appears more than once in FROM; self-joins are not supported",
                details={"relation": name},
            )
        seen.add(name)

    schemas: list[RelationSchema] = [lookup_relation(name, catalog) for name in names]
    plan: Plan = Scan(relation=schemas[0].name, schema=schemas[0])
    for schema in schemas[1:]:
        if not plan.output.attribute_set & schema.attribute_set:
            joined = ", ".join(s.name for s in schemas[: schemas.index(schema)])
            raise AmbiguityUnsupported(
                f"'{schema.name}' shares no attribute with {joined}; cross products are not supported",
                details={"relation": schema.name},
            )
        plan = NaturalJoin(left=plan, right=Scan(relation=schema.name, schema=schema))
    return plan


def _columns_with_offsets(expr: Expr) -> list[tuple[str, int | None]]:
    out: list[tuple[str, int | None]] = []

    def walk(e: Expr) -> None:
        if isinstance(e, Column):
            out.append((e.name, e.offset))
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

    walk(expr)
    return out


def _check_columns(columns: list[tuple[str, int | None]], scope: RelationSchema, catalog: Catalog) -> None:
    for name, offset in columns:
        if scope.has(name):
            continue
        candidates = tuple(sorted(attribute_homes(name, catalog)))
        hint = f" (found in: {', '.join(candidates)})" if candidates else ""
        raise UnknownColumn(
            f"Unknown column '{name}'{hint}",
            column=name,
            candidates=candidates,
            offset=offset,
        )
