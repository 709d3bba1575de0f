"""
Windows: answers to FROM-less queries.

The window of attributes X under predicate p is

    DISTINCT( UNION over each minimal connection C of project(X, filter(p, join(C))) )

Predicate attributes join X for inference, so a selection on a non-projected
attribute still pulls in the relation that carries it.
"""
import logging
from typing import Sequence

from rosi.catalog.types import Attribute, Catalog
from rosi.executor.executor import execute
from rosi.planner.plan import Distinct, Filter, NaturalJoin, Plan, Project, Scan, UnionAll, derived_schema
from rosi.planner.pushdown import push_down_predicates
from rosi.planner.typecheck import check_predicate
from rosi.providers.registry import ProviderSet
from rosi.providers.types import Relation
from rosi.reporting.types import DiagnosticSink
from rosi.sql.ast import Expr, referenced_columns
from rosi.urm.connections import Connection, check_attributes, join_order, minimal_connections

logger = logging.getLogger(__name__)


def inference_attributes(attrs: Sequence[str], predicate: Expr | None) -> tuple[str, ...]:
    seen = dict.fromkeys(attrs)
    seen.update(dict.fromkeys(referenced_columns(predicate)))
    return tuple(seen)


def connection_plan(connection: Connection, catalog: Catalog) -> Plan:
    order = join_order(connection, catalog)
    plan: Plan = Scan(relation=order[0], schema=catalog.relations[order[0]])
    for name in order[1:]:
        plan = NaturalJoin(left=plan, right=Scan(relation=name, schema=catalog.relations[name]))
    return plan


def window_connections(attrs: Sequence[str], predicate: Expr | None, catalog: Catalog) -> list[Connection]:
    return minimal_connections(inference_attributes(attrs, predicate), catalog)


def window_plan(attrs: Sequence[str], predicate: Expr | None, catalog: Catalog) -> Plan:
    """
    Distinct(UnionAll([Project(attrs, Filter(predicate, join(C))) for C in connections])).

    Raises:
        UnknownAttribute, NoConnection, CatalogTooLargeForInference, TypeMismatch.
    """
    wanted = inference_attributes(attrs, predicate)
    check_attributes(wanted, catalog)

    if predicate is not None:
        scope = derived_schema(tuple(Attribute(a, catalog.attribute_registry[a]) for a in wanted))
        check_predicate(predicate, scope)

    branches: list[Plan] = []
    for connection in minimal_connections(wanted, catalog):
        branch = connection_plan(connection, catalog)
        if predicate is not None:
            branch = Filter(expr=predicate, child=branch)
        branches.append(Project(columns=tuple(attrs), child=branch))
    return Distinct(child=UnionAll(children=tuple(branches)))


def window_query(
    attrs: Sequence[str],
    predicate: Expr | None,
    catalog: Catalog,
    providers: ProviderSet,
    *,
    sink: DiagnosticSink | None = None,
    pushdown: bool = True,
) -> Relation:
    """
    Evaluate the window of `attrs`. The result is a set: duplicates never survive.
    A connection whose provider is unavailable contributes nothing and leaves a warning.
    """
    plan = window_plan(attrs, predicate, catalog)
    if pushdown:
        plan = push_down_predicates(plan)
    return execute(plan, providers, sink=sink)
