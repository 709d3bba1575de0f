"""
Live OS providers.

Each provider reads one standard introspection surface (user account database,
process table, directory tree, per-process open files and I/O accounting).
Absent facts become NULL; inaccessible entries are skipped and counted.
"""
import logging
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import psutil

from rosi.catalog.builtin import FILES, IO_REQUESTS, OPEN_FILES, PROCESSES, USERS
from rosi.catalog.types import RelationSchema, Row
from rosi.executor.evaluator import like_prefix
from rosi.providers.errors import ProviderUnavailable
from rosi.providers.interfaces import RelationProvider
from rosi.providers.types import Relation
from rosi.reporting.types import DiagnosticSink
from rosi.sql.ast import Column, Compare, Expr, Like, Literal, conjuncts

try:
    import pwd
except ImportError:  # not a POSIX platform
    pwd = None  # type: ignore[assignment]

logger = logging.getLogger(__name__)

DEFAULT_WALK_LIMIT = 100_000

_PROCESS_ERRORS = (psutil.AccessDenied, psutil.NoSuchProcess, psutil.ZombieProcess)

# ps(1)-style one-letter state codes
_STATE_CODES: dict[str, str] = {
    psutil.STATUS_RUNNING: "R",
    psutil.STATUS_SLEEPING: "S",
    psutil.STATUS_DISK_SLEEP: "D",
    psutil.STATUS_STOPPED: "T",
    psutil.STATUS_TRACING_STOP: "T",
    psutil.STATUS_ZOMBIE: "Z",
    psutil.STATUS_DEAD: "X",
    psutil.STATUS_WAKING: "W",
    psutil.STATUS_IDLE: "I",
    psutil.STATUS_LOCKED: "L",
    psutil.STATUS_WAITING: "W",
    psutil.STATUS_PARKED: "P",
}

# Hint helpers


def equality_literal(hint: Expr | None, column: str) -> object | None:
    """
    The literal a top-level `column = literal` conjunct pins `column` to, if any.
    """
    for c in conjuncts(hint):
        if not isinstance(c, Compare) or c.op != "=":
            continue
        if isinstance(c.lhs, Column) and c.lhs.name == column and isinstance(c.rhs, Literal):
            return c.rhs.value
        if isinstance(c.rhs, Column) and c.rhs.name == column and isinstance(c.lhs, Literal):
            return c.lhs.value
    return None


def prefix_constraints(hint: Expr | None, column: str) -> list[str]:
    """
    Literal prefixes every matching value of `column` must start with, taken from
    top-level equality and LIKE conjuncts. Empty prefixes are dropped.
    """
    prefixes: list[str] = []
    for c in conjuncts(hint):
        if isinstance(c, Like) and c.column.name == column:
            prefix = like_prefix(c.pattern)
            if prefix:
                prefixes.append(prefix)
    value = equality_literal(hint, column)
    if isinstance(value, str) and value:
        prefixes.append(value)
    return prefixes

# users


@dataclass(frozen=True, slots=True)
class UsersProvider:
    schema: RelationSchema = USERS

    def snapshot(self, hint: Expr | None, sink: DiagnosticSink) -> Relation:
        if pwd is None:
            raise ProviderUnavailable("No user account database on this platform", details={"relation": "users"})
        rows: list[Row] = []
        for entry in pwd.getpwall():
            rows.append((entry.pw_uid, entry.pw_name, entry.pw_dir or None, entry.pw_shell or None))
        return Relation(schema=self.schema, rows=tuple(rows))

# processes


def _process_attrs() -> list[str]:
    attrs = ["pid", "ppid", "name", "status", "memory_info", "create_time"]
    if hasattr(psutil.Process, "uids"):
        attrs.append("uids")
    return attrs


def _iter_processes(pid: object | None) -> Iterator[psutil.Process]:
    if isinstance(pid, int) and not isinstance(pid, bool):
        try:
            yield psutil.Process(pid)
        except (*_PROCESS_ERRORS, ValueError):
            return
        return
    yield from psutil.process_iter()


def _process_row(proc: psutil.Process, attrs: list[str]) -> Row:
    info = proc.as_dict(attrs=attrs, ad_value=None)
    uids = info.get("uids")
    mem = info.get("memory_info")
    status = info.get("status")
    created = info.get("create_time")
    return (
        info["pid"],
        info.get("ppid"),
        None if uids is None else uids.real,
        info.get("name") or None,
        None if status is None else _STATE_CODES.get(status, status),
        None if mem is None else mem.rss,
        None if not created else int(created),
    )


@dataclass(frozen=True, slots=True)
class ProcessesProvider:
    schema: RelationSchema = PROCESSES

    def snapshot(self, hint: Expr | None, sink: DiagnosticSink) -> Relation:
        attrs = _process_attrs()
        rows: list[Row] = []
        skipped = 0
        for proc in _iter_processes(equality_literal(hint, "pid")):
            try:
                rows.append(_process_row(proc, attrs))
            except _PROCESS_ERRORS:
                skipped += 1
        if skipped:
            sink.warn("entries_skipped", f"processes: skipped {skipped} inaccessible process(es)", count=skipped)
        return Relation(schema=self.schema, rows=tuple(rows))

# files


def _child_prefix(directory: str) -> str:
    return directory if directory.endswith(os.sep) else directory + os.sep


def dir_may_match(directory: str, prefix: str) -> bool:
    """
    Whether some `dir` value in the subtree rooted at `directory` (itself or a descendant) can start with `prefix`.
    """
    child = _child_prefix(directory)
    return directory.startswith(prefix) or child.startswith(prefix) or prefix.startswith(child)


def path_may_match(directory: str, prefix: str) -> bool:
    """
    Whether some `path` below `directory` can start with `prefix`.
    """
    child = _child_prefix(directory)
    return child.startswith(prefix) or prefix.startswith(child)


@dataclass(frozen=True, slots=True)
class FilesProvider:
    """
    Walks the tree under `root_dir` without following symlinks, stopping after `walk_limit` entries.
    Directory subtrees that cannot satisfy a pushed `dir`/`path` prefix are never entered.
    """
    root_dir: Path
    walk_limit: int = DEFAULT_WALK_LIMIT
    schema: RelationSchema = FILES

    def snapshot(self, hint: Expr | None, sink: DiagnosticSink) -> Relation:
        dir_prefixes = prefix_constraints(hint, "dir")
        path_prefixes = prefix_constraints(hint, "path")

        def may_enter(directory: str) -> bool:
            return all(dir_may_match(directory, p) for p in dir_prefixes) and \
                all(path_may_match(directory, p) for p in path_prefixes)

        root = os.path.abspath(self.root_dir)
        rows: list[Row] = []
        visited = 0
        skipped = 0
        pruned = 0
        truncated = False
        stack = [root] if may_enter(root) else []
        posix = os.name != "nt"

        while stack and not truncated:
            directory = stack.pop()
            try:
                with os.scandir(directory) as it:
                    entries = sorted(it, key=lambda e: e.name)
            except OSError:
                skipped += 1
                continue

            subdirs: list[str] = []
            for entry in entries:
                if visited >= self.walk_limit:
                    truncated = True
                    break
                visited += 1
                try:
                    if entry.is_dir(follow_symlinks=False):
                        if may_enter(entry.path):
                            subdirs.append(entry.path)
                        else:
                            pruned += 1
                        continue
                    st = entry.stat(follow_symlinks=False)
                except OSError:
                    skipped += 1
                    continue
                rows.append((
                    entry.path,
                    directory,
                    entry.name,
                    st.st_size,
                    int(st.st_mtime),
                    st.st_uid if posix else None,
                ))
            # reversed so the walk visits siblings in name order
            stack.extend(reversed(subdirs))

        logger.debug("files walk under %s: %d entries, %d pruned subtrees", root, visited, pruned)
        if truncated:
            sink.warn("walk_truncated", f"files: walk stopped after {self.walk_limit} entries under {root}",
                      limit=self.walk_limit, root=root)
        if skipped:
            sink.warn("entries_skipped", f"files: skipped {skipped} inaccessible entr(ies) under {root}",
                      count=skipped)
        return Relation(schema=self.schema, rows=tuple(rows))

# open_files


@dataclass(frozen=True, slots=True)
class OpenFilesProvider:
    schema: RelationSchema = OPEN_FILES

    def snapshot(self, hint: Expr | None, sink: DiagnosticSink) -> Relation:
        rows: list[Row] = []
        skipped = 0
        for proc in _iter_processes(equality_literal(hint, "pid")):
            try:
                opened = proc.open_files()
            except _PROCESS_ERRORS:
                skipped += 1
                continue
            for f in opened:
                fd = getattr(f, "fd", -1)
                rows.append((proc.pid, fd if fd >= 0 else None, f.path))
        if skipped:
            sink.warn("entries_skipped", f"open_files: skipped {skipped} inaccessible process(es)", count=skipped)
        return Relation(schema=self.schema, rows=tuple(rows))

# io_requests


@dataclass(frozen=True, slots=True)
class IoRequestsProvider:
    """
    No portable per-request queue exists in user space. One row is synthesized per
    (process, direction) with non-zero cumulative I/O count; `request_id` is
    `2 * pid` for reads and `2 * pid + 1` for writes, stable across snapshots.
    """
    schema: RelationSchema = IO_REQUESTS

    def snapshot(self, hint: Expr | None, sink: DiagnosticSink) -> Relation:
        if not hasattr(psutil.Process, "io_counters"):
            raise ProviderUnavailable(
                "Per-process I/O accounting is not available on this platform",
                details={"relation": "io_requests"},
            )
        now = int(time.time())
        rows: list[Row] = []
        skipped = 0
        procs = sorted(_iter_processes(equality_literal(hint, "pid")), key=lambda p: p.pid)
        for proc in procs:
            try:
                counters = proc.io_counters()
            except _PROCESS_ERRORS:
                skipped += 1
                continue
            if counters.read_count > 0:
                rows.append((2 * proc.pid, "unknown", proc.pid, "read", now))
            if counters.write_count > 0:
                rows.append((2 * proc.pid + 1, "unknown", proc.pid, "write", now))
        if skipped:
            sink.warn("entries_skipped", f"io_requests: skipped {skipped} inaccessible process(es)", count=skipped)
        return Relation(schema=self.schema, rows=tuple(rows))


def live_providers(root_dir: Path, walk_limit: int = DEFAULT_WALK_LIMIT) -> dict[str, RelationProvider]:
    return {
        "users": UsersProvider(),
        "processes": ProcessesProvider(),
        "files": FilesProvider(root_dir=root_dir, walk_limit=walk_limit),
        "open_files": OpenFilesProvider(),
        "io_requests": IoRequestsProvider(),
    }
