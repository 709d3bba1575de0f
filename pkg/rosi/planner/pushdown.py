"""
Predicate pushdown.

A Filter conjunct that references only columns of some scan below it (through
NaturalJoin nodes) moves into every such scan's `pushed` slot and leaves the
residual Filter. Equalities on shared join attributes therefore land in both
join inputs. Conjuncts containing OR stay put, except that a Filter sitting
directly on a Scan is absorbed whole.

Rewriting never changes results: providers post-filter with the same
three-valued evaluator the Filter would have used.
"""
from dataclasses import replace

from rosi.planner.plan import Distinct, Filter, Limit, NaturalJoin, Plan, Project, Scan, Sort, UnionAll
from rosi.sql.ast import Expr, conjoin, conjuncts, contains_or, referenced_columns


def push_down_predicates(plan: Plan) -> Plan:
    if isinstance(plan, Scan):
        return plan
    if isinstance(plan, Filter):
        return _push_filter(plan.expr, push_down_predicates(plan.child))
    if isinstance(plan, NaturalJoin):
        return replace(plan, left=push_down_predicates(plan.left), right=push_down_predicates(plan.right))
    if isinstance(plan, UnionAll):
        return UnionAll(children=tuple(push_down_predicates(c) for c in plan.children))
    if isinstance(plan, (Project, Sort, Limit, Distinct)):
        return replace(plan, child=push_down_predicates(plan.child))
    raise TypeError(f"Unsupported plan node: {type(plan).__name__}")

# Helpers


def _merge(scan: Scan, items: tuple[Expr, ...]) -> Scan:
    merged = list(conjuncts(scan.pushed))
    for item in items:
        if item not in merged:
            merged.append(item)
    return replace(scan, pushed=conjoin(merged))


def _push_filter(expr: Expr, child: Plan) -> Plan:
    items = conjuncts(expr)
    if isinstance(child, Scan):
        return _merge(child, items)

    residual: list[Expr] = []
    for item in items:
        if contains_or(item):
            residual.append(item)
            continue
        child, pushed = _push_conjunct(item, frozenset(referenced_columns(item)), child)
        if not pushed:
            residual.append(item)

    remaining = conjoin(residual)
    return child if remaining is None else Filter(expr=remaining, child=child)


def _push_conjunct(item: Expr, columns: frozenset[str], plan: Plan) -> tuple[Plan, bool]:
    if isinstance(plan, Scan):
        if columns <= plan.schema.attribute_set:
            return _merge(plan, (item,)), True
        return plan, False
    if isinstance(plan, NaturalJoin):
        left, into_left = _push_conjunct(item, columns, plan.left)
        right, into_right = _push_conjunct(item, columns, plan.right)
        if not (into_left or into_right):
            return plan, False
        return NaturalJoin(left=left, right=right), True
    return plan, False
