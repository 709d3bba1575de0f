import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from rosi.catalog.errors import InvalidSchema
from rosi.utils.compat import Self
from rosi.utils.enum import StrEnum

IDENTIFIER_RE = re.compile(r"[a-z_][a-z0-9_]*\Z")

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

# Values

Value = Union[None, bool, int, str]
"""
Python representation of a relational value.

  NULL       -> None
  BOOL       -> bool
  INT        -> int (signed 64-bit range)
  TEXT       -> str
  TIMESTAMP  -> int (seconds since epoch)

The tag of a value is given by the declared type of its column.
"""

Row = tuple[Value, ...]


class AttrType(StrEnum):
    INT = "INT"
    TEXT = "TEXT"
    BOOL = "BOOL"
    TIMESTAMP = "TIMESTAMP"

    def accepts(self, value: Value) -> bool:
        """
        Whether a non-NULL value carries this type's tag. NULL is accepted by every type.
        """
        if value is None:
            return True
        if self is AttrType.BOOL:
            return isinstance(value, bool)
        if self is AttrType.TEXT:
            return isinstance(value, str)
        # INT / TIMESTAMP (bool is an int subclass in Python and must not pass)
        return isinstance(value, int) and not isinstance(value, bool) and INT64_MIN <= value <= INT64_MAX


def is_identifier(name: str) -> bool:
    return bool(IDENTIFIER_RE.match(name))

# Schemas

@dataclass(frozen=True, slots=True)
class Attribute:
    name: str
    type: AttrType

    def __str__(self) -> str:
        return f"{self.name}:{self.type.value}"


@dataclass(frozen=True, slots=True)
class RelationSchema:
    """
    Ordered attribute list plus a declared key.

    Keys are documentation: they are never enforced on provider data.
    """
    name: str
    attributes: tuple[Attribute, ...]
    key: tuple[str, ...]

    def __post_init__(self) -> None:
        names = [a.name for a in self.attributes]
        if not self.attributes:
            raise InvalidSchema(f"Relation '{self.name}' has no attributes")
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise InvalidSchema(
                f"Relation '{self.name}' repeats attribute(s): {', '.join(dupes)}",
                details={"relation": self.name, "duplicates": dupes},
            )
        if not self.key:
            raise InvalidSchema(f"Relation '{self.name}' has an empty key")
        missing = [k for k in self.key if k not in names]
        if missing:
            raise InvalidSchema(
                f"Key of '{self.name}' names unknown attribute(s): {', '.join(missing)}",
                details={"relation": self.name, "missing": missing},
            )

    @classmethod
    def of(cls, name: str, attributes: Iterable[tuple[str, AttrType]], key: Iterable[str] | None = None) -> Self:
        """
        Convenience constructor: `RelationSchema.of("users", [("uid", AttrType.INT), ...], key=["uid"])`.

        Without a key, the whole attribute list is the key.
        """
        attrs = tuple(Attribute(n, t) for n, t in attributes)
        return cls(name=name, attributes=attrs, key=tuple(key) if key is not None else tuple(a.name for a in attrs))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    @property
    def attribute_set(self) -> frozenset[str]:
        return frozenset(a.name for a in self.attributes)

    def index_of(self, name: str) -> int:
        for i, a in enumerate(self.attributes):
            if a.name == name:
                return i
        raise KeyError(name)

    def type_of(self, name: str) -> AttrType:
        return self.attributes[self.index_of(name)].type

    def has(self, name: str) -> bool:
        return any(a.name == name for a in self.attributes)

    def validate_identifiers(self) -> None:
        """
        Catalog-level naming check (derived result schemas skip it).
        """
        if not is_identifier(self.name):
            raise InvalidSchema(f"Invalid relation name: {self.name!r}")
        for a in self.attributes:
            if not is_identifier(a.name):
                raise InvalidSchema(
                    f"Invalid attribute name {a.name!r} in relation '{self.name}'",
                    details={"relation": self.name, "attribute": a.name},
                )

    def render(self) -> str:
        return f"{self.name}({', '.join(str(a) for a in self.attributes)})"


@dataclass(frozen=True, slots=True)
class MaximalObject:
    """
    A declared group of relations whose natural join is meaningful.
    """
    name: str
    members: frozenset[str]

    def render(self) -> str:
        return f"{self.name}: {', '.join(sorted(self.members))}"

# Catalog


def _frozen_empty() -> Mapping:
    return MappingProxyType({})


@dataclass(frozen=True, slots=True)
class Catalog:
    """
    The attribute universe, the relation schemas over it, and declared maximal objects.

    The catalog is append-only: registration returns a new Catalog and never
    mutates an existing one. Its mappings are read-only views, so a catalog
    can be shared freely once built.
    """
    relations: Mapping[str, RelationSchema] = field(default_factory=_frozen_empty)
    attribute_registry: Mapping[str, AttrType] = field(default_factory=_frozen_empty)
    maximal_objects: Mapping[str, MaximalObject] = field(default_factory=_frozen_empty)

    @classmethod
    def empty(cls) -> Self:
        return cls()

    def relation_names(self) -> tuple[str, ...]:
        return tuple(sorted(self.relations))

    def get(self, name: str) -> RelationSchema | None:
        return self.relations.get(name)

    def attribute_type(self, name: str) -> AttrType | None:
        return self.attribute_registry.get(name)

    def __contains__(self, name: object) -> bool:
        return name in self.relations
