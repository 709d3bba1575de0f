"""
Pull-based plan evaluation.

Every operator is a generator that asks its child for one row at a time.
Sort materializes its input; Distinct keeps the rows it has already seen;
the hash join builds its right input before streaming the left one.
"""
import logging
from dataclasses import dataclass
from itertools import islice
from typing import Any, Callable, Iterator

from rosi.catalog.types import Row
from rosi.executor.evaluator import TRUE, compile_predicate
from rosi.executor.join import hash_join
from rosi.planner.plan import Distinct, Filter, Limit, NaturalJoin, Plan, Project, Scan, Sort, UnionAll, scans
from rosi.providers.errors import ProviderUnavailable
from rosi.providers.registry import ProviderSet, snapshot_relation
from rosi.providers.types import Relation, row_sort_key, value_sort_key
from rosi.reporting.types import DiagnosticSink

logger = logging.getLogger(__name__)


def execute(plan: Plan, providers: ProviderSet, sink: DiagnosticSink | None = None) -> Relation:
    """
    Evaluate `plan` and collect its rows.

    A provider that is unavailable fails a single-relation query; inside a plan
    that scans several relations (or inside one branch of a window) the scan
    yields nothing and a warning is recorded instead.

    Raises:
        ProviderUnavailable, ProviderError, UnknownRelation, SnapshotError.
    """
    runner = _Runner(providers=providers, sink=sink if sink is not None else DiagnosticSink())
    degrade = len(scans(plan)) > 1
    return Relation(schema=plan.output, rows=tuple(runner.rows(plan, degrade=degrade, branch=None)))


@dataclass(frozen=True, slots=True)
class _Runner:
    providers: ProviderSet
    sink: DiagnosticSink

    def rows(self, plan: Plan, *, degrade: bool, branch: int | None) -> Iterator[Row]:
        if isinstance(plan, Scan):
            return self._scan(plan, degrade=degrade, branch=branch)
        if isinstance(plan, Filter):
            keep = compile_predicate(plan.expr, plan.child.output)
            return (r for r in self.rows(plan.child, degrade=degrade, branch=branch) if keep(r) is TRUE)
        if isinstance(plan, Project):
            source = plan.child.output
            idx = [source.index_of(c) for c in plan.columns]
            return (tuple(r[i] for i in idx) for r in self.rows(plan.child, degrade=degrade, branch=branch))
        if isinstance(plan, NaturalJoin):
            return hash_join(
                plan.left.output,
                plan.right.output,
                self.rows(plan.left, degrade=degrade, branch=branch),
                self.rows(plan.right, degrade=degrade, branch=branch),
            )
        if isinstance(plan, Sort):
            return self._sort(plan, degrade=degrade, branch=branch)
        if isinstance(plan, Limit):
            return islice(self.rows(plan.child, degrade=degrade, branch=branch), plan.n)
        if isinstance(plan, Distinct):
            return _distinct(self.rows(plan.child, degrade=degrade, branch=branch))
        if isinstance(plan, UnionAll):
            return self._union(plan)
        raise TypeError(f"Unsupported plan node: {type(plan).__name__}")

    def _scan(self, plan: Scan, *, degrade: bool, branch: int | None) -> Iterator[Row]:
        try:
            relation = snapshot_relation(plan.relation, plan.pushed, self.providers, sink=self.sink)
        except ProviderUnavailable as e:
            if not degrade:
                raise
            if branch is None:
                self.sink.warn("provider_unavailable", f"{plan.relation}: {e.message}; treated as empty",
                               relation=plan.relation)
            else:
                self.sink.warn("degraded_connection",
                               f"{plan.relation}: {e.message}; one connection contributes no rows",
                               relation=plan.relation, connection=branch)
            return
        yield from relation.rows

    def _sort(self, plan: Sort, *, degrade: bool, branch: int | None) -> Iterator[Row]:
        schema = plan.child.output
        rows = sorted(self.rows(plan.child, degrade=degrade, branch=branch), key=row_sort_key)
        # stable passes from the least significant key; full-row order breaks the remaining ties
        for key in reversed(plan.keys):
            rows.sort(key=_column_key(schema.index_of(key.column)), reverse=key.descending)
        yield from rows

    def _union(self, plan: UnionAll) -> Iterator[Row]:
        for n, child in enumerate(plan.children):
            yield from self.rows(child, degrade=True, branch=n)


def _column_key(idx: int) -> Callable[[Row], tuple[int, Any]]:
    return lambda row: value_sort_key(row[idx])


def _distinct(rows: Iterator[Row]) -> Iterator[Row]:
    seen: set[Row] = set()
    for row in rows:
        if row not in seen:
            seen.add(row)
            yield row
