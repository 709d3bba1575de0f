from rosi.planner.plan import Distinct, Filter, Limit, NaturalJoin, Plan, Project, Scan, Sort, UnionAll, children
from rosi.sql.render import render_expr

INDENT = "  "


def describe_node(plan: Plan) -> str:
    if isinstance(plan, Scan):
        if plan.pushed is None:
            return f"Scan {plan.relation}"
        return f"Scan {plan.relation} WHERE {render_expr(plan.pushed)}"
    if isinstance(plan, Filter):
        return f"Filter {render_expr(plan.expr)}"
    if isinstance(plan, Project):
        return "Project " + ", ".join(plan.columns)
    if isinstance(plan, NaturalJoin):
        return "NaturalJoin"
    if isinstance(plan, Sort):
        return "Sort " + ", ".join(f"{k.column} {'DESC' if k.descending else 'ASC'}" for k in plan.keys)
    if isinstance(plan, Limit):
        return f"Limit {plan.n}"
    if isinstance(plan, Distinct):
        return "Distinct"
    if isinstance(plan, UnionAll):
        return "UnionAll"
    raise TypeError(f"Unsupported plan node: {type(plan).__name__}")


def explain(plan: Plan) -> str:
    """
    One node per line, children indented two spaces deeper than their parent.
    """
    lines: list[str] = []

    def visit(node: Plan, depth: int) -> None:
        lines.append(INDENT * depth + describe_node(node))
        for child in children(node):
            visit(child, depth + 1)

    visit(plan, 0)
    return "\n".join(lines)
