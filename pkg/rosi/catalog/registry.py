from types import MappingProxyType
from typing import Iterable

from rosi.catalog.errors import (
    AttributeTypeConflict,
    DisconnectedMembers,
    DuplicateObjectName,
    DuplicateRelation,
    InvalidSchema,
    UnknownRelation,
)
from rosi.catalog.graph import is_connected
from rosi.catalog.types import Catalog, MaximalObject, RelationSchema, is_identifier


def register_relation(schema: RelationSchema, catalog: Catalog) -> Catalog:
    """
    Return a new catalog that also contains `schema`.

    Raises:
        DuplicateRelation if the name is taken.
        AttributeTypeConflict if an attribute is already registered with another type.
    """
    schema.validate_identifiers()

    if schema.name in catalog.relations:
        raise DuplicateRelation(
            f"Relation '{schema.name}' is already registered",
            details={"relation": schema.name},
        )

    registry = dict(catalog.attribute_registry)
    for attr in schema.attributes:
        known = registry.get(attr.name)
        if known is not None and known != attr.type:
            raise AttributeTypeConflict(
                f"Attribute '{attr.name}' is {known.value} elsewhere but {attr.type.value} in '{schema.name}'",
                details={"attribute": attr.name, "registered": known.value, "declared": attr.type.value,
                         "relation": schema.name},
            )
        registry[attr.name] = attr.type

    relations = dict(catalog.relations)
    relations[schema.name] = schema

    return Catalog(
        relations=MappingProxyType(relations),
        attribute_registry=MappingProxyType(registry),
        maximal_objects=catalog.maximal_objects,
    )


def register_relations(schemas: Iterable[RelationSchema], catalog: Catalog | None = None) -> Catalog:
    out = catalog or Catalog.empty()
    for schema in schemas:
        out = register_relation(schema, out)
    return out


def register_maximal_object(name: str, members: Iterable[str], catalog: Catalog) -> Catalog:
    """
    Return a new catalog that also declares the maximal object `name`.

    Raises:
        DuplicateObjectName, UnknownRelation, DisconnectedMembers.
    """
    if not is_identifier(name):
        raise InvalidSchema(f"Invalid maximal object name: {name!r}")
    if name in catalog.maximal_objects:
        raise DuplicateObjectName(f"Maximal object '{name}' is already registered", details={"object": name})

    member_set = frozenset(members)
    if not member_set:
        raise InvalidSchema(f"Maximal object '{name}' has no members")

    unknown = sorted(m for m in member_set if m not in catalog.relations)
    if unknown:
        raise UnknownRelation(
            f"Maximal object '{name}' names unknown relation(s): {', '.join(unknown)}",
            details={"object": name, "unknown": unknown},
        )

    attribute_sets = {n: s.attribute_set for n, s in catalog.relations.items()}
    if not is_connected(attribute_sets, member_set):
        raise DisconnectedMembers(
            f"Members of maximal object '{name}' do not share attributes: {', '.join(sorted(member_set))}",
            details={"object": name, "members": sorted(member_set)},
        )

    objects = dict(catalog.maximal_objects)
    objects[name] = MaximalObject(name=name, members=member_set)
    return Catalog(
        relations=catalog.relations,
        attribute_registry=catalog.attribute_registry,
        maximal_objects=MappingProxyType(objects),
    )


def attribute_homes(attr: str, catalog: Catalog) -> frozenset[str]:
    """
    Relations whose schema contains `attr`; empty for unknown attributes.
    """
    return frozenset(name for name, schema in catalog.relations.items() if schema.has(attr))


def lookup_relation(name: str, catalog: Catalog) -> RelationSchema:
    schema = catalog.get(name)
    if schema is None:
        raise UnknownRelation(
            f"Unknown relation '{name}'",
            details={"relation": name, "known": list(catalog.relation_names())},
        )
    return schema
