import logging
from dataclasses import dataclass, field
from pathlib import Path

from rosi.catalog.builtin import default_catalog
from rosi.catalog.registry import register_maximal_object
from rosi.catalog.types import Catalog
from rosi.executor.executor import execute
from rosi.planner.explain import explain
from rosi.planner.plan import Plan
from rosi.planner.planner import DefaultQueryPlanner, QueryPlanner
from rosi.planner.pushdown import push_down_predicates
from rosi.providers.live import DEFAULT_WALK_LIMIT
from rosi.providers.registry import ProviderSet
from rosi.providers.types import Relation
from rosi.reporting.types import Diagnostic, DiagnosticSink
from rosi.snapshot.store import capture_relations, load_snapshot
from rosi.sql.parser import DefaultQueryParser, QueryParser
from rosi.urm.connections import Connection, minimal_connections
from rosi.utils.compat import Self

logger = logging.getLogger(__name__)

# Engine config + result


@dataclass(frozen=True, slots=True)
class EngineConfig:
    """
    `snapshot_dir` switches every query to FIXTURE mode; otherwise relations
    are read live with the files walk scoped to `root_dir`.
    """
    snapshot_dir: Path | None = None
    root_dir: Path | None = None
    pushdown: bool = True
    max_objects: tuple[tuple[str, tuple[str, ...]], ...] = ()
    walk_limit: int = DEFAULT_WALK_LIMIT


@dataclass(frozen=True, slots=True)
class QueryResult:
    relation: Relation
    diagnostics: tuple[Diagnostic, ...] = ()

# Engine


@dataclass(frozen=True, slots=True)
class QueryEngine:
    """
    Parse, plan, optimize and execute queries against one catalog and provider set.

    Immutable; one engine can serve any number of queries.
    """
    catalog: Catalog
    providers: ProviderSet
    pushdown: bool = True
    parser: QueryParser = field(default_factory=DefaultQueryParser)
    planner: QueryPlanner = field(default_factory=DefaultQueryPlanner)

    @classmethod
    def open(cls, cfg: EngineConfig) -> Self:
        """
        Raises:
            SnapshotError, AttributeTypeConflict (fixture headers), CatalogError (maximal objects).
        """
        if cfg.snapshot_dir is not None:
            catalog, providers = load_snapshot(cfg.snapshot_dir)
        else:
            catalog = default_catalog()
            providers = ProviderSet.live(cfg.root_dir, walk_limit=cfg.walk_limit)

        for name, members in cfg.max_objects:
            catalog = register_maximal_object(name, members, catalog)

        logger.debug("Engine over %s with %d relation(s)", providers.describe(), len(catalog.relations))
        return cls(catalog=catalog, providers=providers, pushdown=cfg.pushdown)

    def plan(self, sql: str) -> Plan:
        stmt = self.parser.parse(sql)
        plan = self.planner.plan(stmt, self.catalog)
        return push_down_predicates(plan) if self.pushdown else plan

    def explain(self, sql: str) -> str:
        return explain(self.plan(sql))

    def run(self, sql: str) -> QueryResult:
        plan = self.plan(sql)
        sink = DiagnosticSink()
        relation = execute(plan, self.providers, sink=sink)
        return QueryResult(relation=relation, diagnostics=sink.items)

    def connections(self, attrs: list[str]) -> list[Connection]:
        return minimal_connections(attrs, self.catalog)

    def capture(self) -> tuple[list[Relation], tuple[Diagnostic, ...]]:
        sink = DiagnosticSink()
        relations = capture_relations(self.providers, sink)
        return relations, sink.items
