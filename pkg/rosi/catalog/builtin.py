"""
Built-in schemas of the five OS relations.

The file owner's user id is `uid`, like everywhere else, so `files` joins
`users` and `processes` naturally. `ppid` deliberately keeps its own name.
"""
from functools import lru_cache

from rosi.catalog.registry import register_relations
from rosi.catalog.types import AttrType, Catalog, RelationSchema

INT = AttrType.INT
TEXT = AttrType.TEXT
TIMESTAMP = AttrType.TIMESTAMP

USERS = RelationSchema.of(
    "users",
    [("uid", INT), ("username", TEXT), ("home_dir", TEXT), ("shell", TEXT)],
    key=["uid"],
)

PROCESSES = RelationSchema.of(
    "processes",
    [
        ("pid", INT),
        ("ppid", INT),
        ("uid", INT),
        ("command", TEXT),
        ("state", TEXT),
        ("rss_bytes", INT),
        ("started_at", TIMESTAMP),
    ],
    key=["pid"],
)

FILES = RelationSchema.of(
    "files",
    [
        ("path", TEXT),
        ("dir", TEXT),
        ("file_name", TEXT),
        ("size_bytes", INT),
        ("mtime", TIMESTAMP),
        ("uid", INT),
    ],
    key=["path"],
)

OPEN_FILES = RelationSchema.of(
    "open_files",
    [("pid", INT), ("fd", INT), ("path", TEXT)],
    key=["pid", "fd"],
)

IO_REQUESTS = RelationSchema.of(
    "io_requests",
    [("request_id", INT), ("device", TEXT), ("pid", INT), ("op", TEXT), ("queued_at", TIMESTAMP)],
    key=["request_id"],
)

BUILTIN_SCHEMAS: tuple[RelationSchema, ...] = (USERS, PROCESSES, FILES, OPEN_FILES, IO_REQUESTS)


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    """
    The compiled-in catalog (no maximal objects declared).
    """
    return register_relations(BUILTIN_SCHEMAS)


def builtin_schema(name: str) -> RelationSchema | None:
    for schema in BUILTIN_SCHEMAS:
        if schema.name == name:
            return schema
    return None
