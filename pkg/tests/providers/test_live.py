import os
import sys
from pathlib import Path

import pytest

from rosi.executor.evaluator import TRUE, eval_expr
from rosi.providers import live
from rosi.providers.errors import ProviderUnavailable
from rosi.providers.live import (
    FilesProvider,
    dir_may_match,
    equality_literal,
    path_may_match,
    prefix_constraints,
)
from rosi.providers.registry import ProviderSet, snapshot_relation
from rosi.reporting.types import DiagnosticSink
from rosi.sql.ast import And, Column, Compare, Like, Literal, Or

posix_only = pytest.mark.skipif(os.name != "posix", reason="POSIX paths and account database")
linux_only = pytest.mark.skipif(not sys.platform.startswith("linux"), reason="relies on /proc")

# Helpers


def eq(column: str, value) -> Compare:
    return Compare(op="=", lhs=Column(name=column), rhs=Literal(value=value))


def like(column: str, pattern: str) -> Like:
    return Like(column=Column(name=column), pattern=pattern)


def make_tree(root: Path) -> None:
    for rel in ("a/one.txt", "a/deep/two.txt", "b/three.txt", "c/x/y/four.txt", "top.txt"):
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(rel)

# Tests: hint helpers


def test_equality_literal_reads_either_side():
    assert equality_literal(eq("pid", 7), "pid") == 7
    assert equality_literal(Compare(op="=", lhs=Literal(value=7), rhs=Column(name="pid")), "pid") == 7
    assert equality_literal(And(items=(eq("uid", 0), eq("pid", 3))), "pid") == 3


def test_equality_literal_ignores_disjunctions_and_other_ops():
    assert equality_literal(Or(items=(eq("pid", 1), eq("pid", 2))), "pid") is None
    assert equality_literal(Compare(op="<", lhs=Column(name="pid"), rhs=Literal(value=9)), "pid") is None
    assert equality_literal(None, "pid") is None


def test_prefix_constraints():
    hint = And(items=(like("dir", "/a/%"), eq("path", "/a/b"), like("path", "%x")))
    assert prefix_constraints(hint, "dir") == ["/a/"]
    assert prefix_constraints(hint, "path") == ["/a/b"]


@posix_only
@pytest.mark.parametrize(
    ("directory", "prefix", "expected"),
    [
        ("/home", "/home/ana", True),
        ("/home/ana/docs", "/home/", True),
        ("/", "/home/", True),
        ("/var", "/home/", False),
        ("/home2", "/home/", False),
    ],
)
def test_dir_may_match(directory, prefix, expected):
    assert dir_may_match(directory, prefix) is expected


@posix_only
@pytest.mark.parametrize(
    ("directory", "prefix", "expected"),
    [
        ("/home", "/home/ana/n", True),
        ("/home/ana", "/home/", True),
        ("/ho", "/home", False),
        ("/var", "/home", False),
    ],
)
def test_path_may_match(directory, prefix, expected):
    assert path_may_match(directory, prefix) is expected

# Tests: files


@posix_only
def test_files_walk_lists_regular_files(tmp_path: Path):
    make_tree(tmp_path)
    relation = FilesProvider(root_dir=tmp_path).snapshot(None, DiagnosticSink())
    assert relation.type_errors() == []
    root = os.path.abspath(tmp_path)
    assert sorted(relation.column("path")) == sorted(
        os.path.join(root, rel) for rel in ("a/one.txt", "a/deep/two.txt", "b/three.txt", "c/x/y/four.txt", "top.txt")
    )
    by_name = {row[2]: row for row in relation.rows}
    assert by_name["top.txt"][1] == root
    assert by_name["top.txt"][3] == len("top.txt")
    assert by_name["top.txt"][5] == os.getuid()


@posix_only
def test_pruned_walk_matches_filtered_walk(tmp_path: Path):
    make_tree(tmp_path)
    root = os.path.abspath(tmp_path)
    providers = ProviderSet.live(tmp_path)
    full = snapshot_relation("files", None, providers)
    for predicate in (
        like("dir", f"{root}/a%"),
        like("path", f"{root}/c/x/%"),
        eq("dir", f"{root}/b"),
        And(items=(like("dir", f"{root}/a/%"), like("file_name", "t%"))),
    ):
        pruned = snapshot_relation("files", predicate, providers)
        keep = [r for r in full.rows if eval_expr(predicate, r, full.schema) is TRUE]
        assert sorted(pruned.rows) == sorted(keep)


@posix_only
def test_walk_stops_at_its_limit(tmp_path: Path):
    make_tree(tmp_path)
    sink = DiagnosticSink()
    relation = FilesProvider(root_dir=tmp_path, walk_limit=3).snapshot(None, sink)
    assert len(relation) <= 3
    assert [d.kind for d in sink.items] == ["walk_truncated"]


def test_root_comes_from_environment(monkeypatch, tmp_path: Path):
    monkeypatch.setenv("ROSI_ROOT", str(tmp_path))
    assert ProviderSet.live().root_dir.resolve() == tmp_path.resolve()
    assert ProviderSet.live(tmp_path / "x").root_dir == tmp_path / "x"


def test_root_defaults_to_cwd(monkeypatch, tmp_path: Path):
    monkeypatch.delenv("ROSI_ROOT", raising=False)
    monkeypatch.chdir(tmp_path)
    assert ProviderSet.live().root_dir.resolve() == tmp_path.resolve()

# Tests: users and processes


@posix_only
def test_users_include_the_current_uid(tmp_path: Path):
    relation = snapshot_relation("users", None, ProviderSet.live(tmp_path))
    assert len(relation) > 0
    assert relation.type_errors() == []
    assert os.getuid() in relation.column("uid")


def test_users_unavailable_without_account_database(monkeypatch, tmp_path: Path):
    monkeypatch.setattr(live, "pwd", None)
    with pytest.raises(ProviderUnavailable):
        snapshot_relation("users", None, ProviderSet.live(tmp_path))


def test_own_process_is_listed(tmp_path: Path):
    relation = snapshot_relation("processes", eq("pid", os.getpid()), ProviderSet.live(tmp_path))
    assert relation.column("pid") == (os.getpid(),)
    assert relation.type_errors() == []
    (row,) = relation.rows
    assert row[3]
    assert row[5] is None or row[5] > 0


def test_processes_without_hint_include_self(tmp_path: Path):
    assert os.getpid() in snapshot_relation("processes", None, ProviderSet.live(tmp_path)).column("pid")


def test_pid_hint_for_missing_process_is_empty(tmp_path: Path):
    assert snapshot_relation("processes", eq("pid", 2**40), ProviderSet.live(tmp_path)).rows == ()


@linux_only
def test_open_files_show_a_file_held_open(tmp_path: Path):
    target = tmp_path / "held.txt"
    target.write_text("x")
    with open(target) as handle:
        relation = snapshot_relation("open_files", eq("pid", os.getpid()), ProviderSet.live(tmp_path))
        rows = [r for r in relation.rows if r[2] == os.path.realpath(target)]
        assert rows and rows[0][1] == handle.fileno()
