"""
Snapshot directories: one `<relation>.rel` file per relation.
"""
import logging
from collections import Counter
from pathlib import Path
from typing import Iterable

from rosi.catalog.types import Catalog
from rosi.providers.errors import ProviderUnavailable
from rosi.providers.fixture import fixture_catalog, read_headers
from rosi.providers.registry import ProviderSet, list_relations, snapshot_relation
from rosi.providers.types import Relation
from rosi.reporting.types import DiagnosticSink
from rosi.snapshot.codec import SUFFIX, encode_relation
from rosi.snapshot.errors import DuplicateRelationName, SnapshotIoError

logger = logging.getLogger(__name__)


def save_snapshot(relations: Iterable[Relation], directory: Path) -> list[Path]:
    """
    Write each relation to `<directory>/<name>.rel`, rows in canonical order.
    Creates the directory if needed. Returns the written paths, sorted.

    Raises:
        DuplicateRelationName, SnapshotIoError.
    """
    relations = list(relations)
    counts = Counter(r.name for r in relations)
    duplicates = sorted(name for name, n in counts.items() if n > 1)
    if duplicates:
        raise DuplicateRelationName(
            f"Relation name(s) given more than once: {', '.join(duplicates)}",
            details={"relations": duplicates},
        )

    written: list[Path] = []
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for relation in sorted(relations, key=lambda r: r.name):
            path = directory / f"{relation.name}{SUFFIX}"
            path.write_bytes(encode_relation(relation))
            logger.debug("Wrote %d row(s) to %s", len(relation), path)
            written.append(path)
    except OSError as e:
        raise SnapshotIoError(f"Cannot write snapshot to {directory}: {e.strerror or e}",
                              details={"dir": str(directory)}) from e
    return written


def load_snapshot(directory: Path) -> tuple[Catalog, ProviderSet]:
    """
    Rebuild the catalog from the fixture headers (registered in filename order)
    and return it with a FIXTURE-mode provider set over `directory`.

    Raises:
        SnapshotIoError, FormatError, AttributeTypeConflict.
    """
    if not directory.is_dir():
        raise SnapshotIoError(f"Snapshot directory {directory} does not exist", details={"dir": str(directory)})
    catalog = fixture_catalog(read_headers(directory))
    logger.debug("Loaded %d relation(s) from %s", len(catalog.relations), directory)
    return catalog, ProviderSet.fixture(directory)


def capture_relations(providers: ProviderSet, sink: DiagnosticSink) -> list[Relation]:
    """
    Snapshot every relation the provider set offers, in name order. Relations
    whose provider is unavailable here are skipped with a warning.
    """
    captured: list[Relation] = []
    for schema in sorted(list_relations(providers), key=lambda s: s.name):
        try:
            captured.append(snapshot_relation(schema.name, None, providers, sink=sink))
        except ProviderUnavailable as e:
            sink.warn("snapshot_skipped", f"{schema.name}: {e.message}; not captured", relation=schema.name)
    return captured
