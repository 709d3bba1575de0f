import logging
import os
from dataclasses import dataclass
from pathlib import Path

from rosi.catalog.builtin import BUILTIN_SCHEMAS
from rosi.catalog.errors import UnknownRelation
from rosi.catalog.types import RelationSchema
from rosi.errors import RosiError
from rosi.executor.evaluator import TRUE, compile_predicate
from rosi.providers.errors import FixtureReadError, ProviderError
from rosi.providers.fixture import FixtureProvider, fixture_catalog, read_header, read_headers
from rosi.providers.interfaces import RelationProvider
from rosi.providers.live import DEFAULT_WALK_LIMIT, live_providers
from rosi.providers.types import ProviderMode, Relation
from rosi.reporting.types import DiagnosticSink
from rosi.snapshot.codec import SUFFIX
from rosi.sql.ast import Expr
from rosi.sql.render import render_expr
from rosi.utils.compat import Self

logger = logging.getLogger(__name__)

ROOT_ENV = "ROSI_ROOT"


@dataclass(frozen=True, slots=True)
class ProviderSet:
    """
    Named sources of relation snapshots. Exactly one mode is active:
    LIVE reads the OS (files scoped to `root_dir`), FIXTURE replays `fixture_dir`.
    """
    mode: ProviderMode
    root_dir: Path | None = None
    fixture_dir: Path | None = None
    walk_limit: int = DEFAULT_WALK_LIMIT

    def __post_init__(self) -> None:
        if self.mode == ProviderMode.FIXTURE and self.fixture_dir is None:
            raise ValueError("FIXTURE mode requires fixture_dir")
        if self.mode == ProviderMode.LIVE and self.root_dir is None:
            raise ValueError("LIVE mode requires root_dir")

    @classmethod
    def live(cls, root_dir: Path | None = None, walk_limit: int = DEFAULT_WALK_LIMIT) -> Self:
        """
        Root precedence: explicit argument, then $ROSI_ROOT, then the current directory.
        """
        if root_dir is None:
            env_root = os.environ.get(ROOT_ENV)
            root_dir = Path(env_root) if env_root else Path.cwd()
        return cls(mode=ProviderMode.LIVE, root_dir=root_dir, walk_limit=walk_limit)

    @classmethod
    def fixture(cls, fixture_dir: Path) -> Self:
        return cls(mode=ProviderMode.FIXTURE, fixture_dir=fixture_dir)

    def list_relations(self) -> frozenset[RelationSchema]:
        return list_relations(self)

    def snapshot_relation(self, name: str, predicate: Expr | None = None, *,
                          sink: DiagnosticSink | None = None) -> Relation:
        return snapshot_relation(name, predicate, self, sink=sink)

    def describe(self) -> str:
        if self.mode == ProviderMode.FIXTURE:
            return f"fixture {self.fixture_dir}"
        return f"live (root {self.root_dir})"

# Operations


def list_relations(providers: ProviderSet) -> frozenset[RelationSchema]:
    """
    Schemas the provider set can snapshot.

    Raises:
        FixtureReadError if the fixture directory is unreadable or its headers are malformed or conflicting.
    """
    if providers.mode == ProviderMode.LIVE:
        return frozenset(BUILTIN_SCHEMAS)

    assert providers.fixture_dir is not None
    try:
        schemas = read_headers(providers.fixture_dir)
        fixture_catalog(schemas)
    except RosiError as e:
        raise FixtureReadError(str(e), details={"dir": str(providers.fixture_dir)}) from e
    return frozenset(schemas)


def _provider(name: str, providers: ProviderSet) -> RelationProvider:
    if providers.mode == ProviderMode.FIXTURE:
        assert providers.fixture_dir is not None
        path = providers.fixture_dir / f"{name}{SUFFIX}"
        if path.is_file():
            try:
                return FixtureProvider(path=path, schema=read_header(path))
            except RosiError as e:
                raise FixtureReadError(str(e), details={"file": str(path)}) from e
    else:
        assert providers.root_dir is not None
        provider = live_providers(providers.root_dir, providers.walk_limit).get(name)
        if provider is not None:
            return provider

    known = sorted(s.name for s in list_relations(providers))
    raise UnknownRelation(f"Unknown relation '{name}'", details={"relation": name, "known": known})


def snapshot_relation(
    name: str,
    predicate: Expr | None,
    providers: ProviderSet,
    *,
    sink: DiagnosticSink | None = None,
) -> Relation:
    """
    Take a snapshot of relation `name`, keeping only rows for which `predicate` is TRUE.

    The predicate is handed to the provider as a pruning hint and then applied to
    every row, so the result equals filtering an unpredicated snapshot.

    Raises:
        UnknownRelation, ProviderUnavailable, ProviderError.
    """
    sink = sink if sink is not None else DiagnosticSink()
    provider = _provider(name, providers)

    try:
        relation = provider.snapshot(predicate, sink)
    except RosiError:
        raise
    except Exception as e:
        raise ProviderError(f"Provider for '{name}' failed: {e}", details={"relation": name}) from e

    if predicate is None:
        return relation

    logger.debug("Post-filtering %s with %s", name, render_expr(predicate))
    keep = compile_predicate(predicate, relation.schema)
    return Relation(schema=relation.schema, rows=tuple(r for r in relation.rows if keep(r) is TRUE))
