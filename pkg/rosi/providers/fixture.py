"""
Fixture providers: relations replayed from `<relation>.rel` files.

Fixture mode never touches live OS state; every snapshot re-reads its file.
"""
import logging
from dataclasses import dataclass
from pathlib import Path

from rosi.catalog.builtin import default_catalog
from rosi.catalog.errors import AttributeTypeConflict
from rosi.catalog.registry import register_relations
from rosi.catalog.types import Catalog, RelationSchema
from rosi.providers.types import Relation
from rosi.reporting.types import DiagnosticSink
from rosi.snapshot.codec import SUFFIX, decode_body, decode_header, split_header
from rosi.snapshot.errors import SnapshotIoError
from rosi.sql.ast import Expr

logger = logging.getLogger(__name__)


def fixture_files(directory: Path) -> list[Path]:
    """
    `.rel` files of a fixture directory in lexicographic filename order.

    Raises:
        SnapshotIoError if the directory cannot be listed.
    """
    try:
        entries = sorted(p for p in directory.iterdir() if p.suffix == SUFFIX and p.is_file())
    except OSError as e:
        raise SnapshotIoError(f"Cannot read fixture directory {directory}: {e.strerror or e}",
                              details={"dir": str(directory)}) from e
    return entries


def read_text(path: Path) -> str:
    try:
        return path.read_bytes().decode("utf-8")
    except OSError as e:
        raise SnapshotIoError(f"Cannot read {path}: {e.strerror or e}", details={"file": str(path)}) from e
    except UnicodeDecodeError as e:
        raise SnapshotIoError(f"{path} is not valid UTF-8", details={"file": str(path)}) from e


def read_header(path: Path) -> RelationSchema:
    header, _ = split_header(read_text(path))
    return decode_header(header, name=path.stem, file=path.name)


def read_headers(directory: Path) -> list[RelationSchema]:
    return [read_header(p) for p in fixture_files(directory)]


def fixture_catalog(schemas: list[RelationSchema]) -> Catalog:
    """
    Register fixture schemas in the given order.

    An attribute that also exists in the built-in catalog must keep its built-in
    type, so fixtures stay joinable with the live relations they stand in for.

    Raises:
        AttributeTypeConflict, DuplicateRelation.
    """
    builtin = default_catalog().attribute_registry
    for schema in schemas:
        for attr in schema.attributes:
            known = builtin.get(attr.name)
            if known is not None and known != attr.type:
                raise AttributeTypeConflict(
                    f"Attribute '{attr.name}' is {known.value} in the built-in catalog "
                    f"but {attr.type.value} in '{schema.name}'",
                    details={"attribute": attr.name, "registered": known.value, "declared": attr.type.value,
                             "relation": schema.name},
                )
    return register_relations(schemas)


@dataclass(frozen=True, slots=True)
class FixtureProvider:
    path: Path
    schema: RelationSchema

    def snapshot(self, hint: Expr | None, sink: DiagnosticSink) -> Relation:
        _, body = split_header(read_text(self.path))
        logger.debug("Replaying %s", self.path)
        return Relation(schema=self.schema, rows=decode_body(body, self.schema, file=self.path.name))
