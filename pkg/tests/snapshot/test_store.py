import random
from pathlib import Path

import pytest

from rosi.catalog.builtin import USERS
from rosi.catalog.errors import AttributeTypeConflict
from rosi.catalog.types import INT64_MAX, INT64_MIN, AttrType, RelationSchema
from rosi.providers.registry import ProviderSet, snapshot_relation
from rosi.providers.types import ProviderMode, Relation
from rosi.reporting.types import DiagnosticSink
from rosi.snapshot.codec import encode_relation
from rosi.snapshot.errors import DuplicateRelationName, FormatError, SnapshotIoError
from rosi.snapshot.store import capture_relations, load_snapshot, save_snapshot

NASTY_TEXT = ("", "plain", "with,comma", 'with "quotes"', "line\nbreak", "\"\n,", "ünïcödé", "%_", " ")

# Helpers


def random_relation(rng: random.Random, name: str) -> Relation:
    types = [AttrType.INT, AttrType.TEXT, AttrType.BOOL, AttrType.TIMESTAMP]
    attrs = [(f"{name}_c{i}", rng.choice(types)) for i in range(rng.randint(1, 4))]
    schema = RelationSchema.of(name, attrs)

    def value(t: AttrType):
        if rng.random() < 0.2:
            return None
        if t is AttrType.TEXT:
            return rng.choice(NASTY_TEXT)
        if t is AttrType.BOOL:
            return rng.random() < 0.5
        return rng.choice((0, 1, -1, INT64_MIN, INT64_MAX, rng.randint(INT64_MIN, INT64_MAX)))

    rows = [tuple(value(t) for _, t in attrs) for _ in range(rng.randint(0, 6))]
    return Relation.of(schema, rows)

# Tests: save and load


def test_save_writes_one_file_per_relation(tmp_path: Path):
    users = Relation.of(USERS, [(0, "root", "/root", "/bin/sh")])
    other = Relation.of(RelationSchema.of("extra", [("note", AttrType.TEXT)]), [("x",)])
    written = save_snapshot([users, other], tmp_path / "snap")
    assert [p.name for p in written] == ["extra.rel", "users.rel"]
    assert (tmp_path / "snap" / "users.rel").read_bytes() == encode_relation(users)


def test_duplicate_names_are_rejected(tmp_path: Path):
    users = Relation.of(USERS, [])
    with pytest.raises(DuplicateRelationName):
        save_snapshot([users, users], tmp_path / "snap")
    assert not (tmp_path / "snap").exists()


def test_unwritable_target(tmp_path: Path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(SnapshotIoError):
        save_snapshot([Relation.of(USERS, [])], blocker / "snap")


def test_load_rebuilds_catalog_and_fixture_providers(f1_dir: Path):
    catalog, providers = load_snapshot(f1_dir)
    assert catalog.relation_names() == ("files", "io_requests", "open_files", "processes", "users")
    assert catalog.relations["users"] == USERS
    assert providers.mode == ProviderMode.FIXTURE
    assert providers.fixture_dir == f1_dir


def test_load_missing_directory(tmp_path: Path):
    with pytest.raises(SnapshotIoError, match="does not exist"):
        load_snapshot(tmp_path / "nope")


def test_load_rejects_conflicting_types_across_files(tmp_path: Path):
    (tmp_path / "a.rel").write_text("x:INT\n1\n")
    (tmp_path / "b.rel").write_text("x:TEXT\n\"1\"\n")
    with pytest.raises(AttributeTypeConflict):
        load_snapshot(tmp_path)


def test_load_rejects_types_that_contradict_builtin_attributes(tmp_path: Path):
    (tmp_path / "accounts.rel").write_text("uid:TEXT\n\"0\"\n")
    with pytest.raises(AttributeTypeConflict, match="built-in"):
        load_snapshot(tmp_path)


def test_load_reports_malformed_header(tmp_path: Path):
    (tmp_path / "a.rel").write_text("x:REAL\n")
    with pytest.raises(FormatError) as info:
        load_snapshot(tmp_path)
    assert str(info.value).startswith("a.rel:1: ")


def test_non_rel_files_are_ignored(tmp_path: Path):
    (tmp_path / "a.rel").write_text("x:INT\n1\n")
    (tmp_path / "README").write_text("not a relation")
    catalog, _ = load_snapshot(tmp_path)
    assert catalog.relation_names() == ("a",)

# Tests: round trip


def test_random_relations_survive_save_and_load(tmp_path: Path):
    rng = random.Random(7)
    for n in range(50):
        relations = [random_relation(rng, f"r{i}") for i in range(rng.randint(1, 3))]
        directory = tmp_path / f"s{n}"
        save_snapshot(relations, directory)
        catalog, providers = load_snapshot(directory)
        for original in relations:
            assert catalog.relations[original.name] == original.schema
            loaded = snapshot_relation(original.name, None, providers)
            assert loaded.sorted_rows() == original.sorted_rows()


def test_resaving_a_loaded_snapshot_is_byte_identical(tmp_path: Path, f1_dir: Path):
    _, providers = load_snapshot(f1_dir)
    relations = capture_relations(providers, DiagnosticSink())
    save_snapshot(relations, tmp_path / "copy")
    for path in sorted(f1_dir.glob("*.rel")):
        assert (tmp_path / "copy" / path.name).read_bytes() == path.read_bytes()


def test_capture_skips_unavailable_providers(monkeypatch, tmp_path: Path):
    monkeypatch.setattr("rosi.providers.live.pwd", None)
    sink = DiagnosticSink()
    relations = capture_relations(ProviderSet.live(tmp_path), sink)
    assert "users" not in {r.name for r in relations}
    assert "snapshot_skipped" in [d.kind for d in sink.items]
