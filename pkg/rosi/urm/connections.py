"""
Inclusion-minimal connected covers.

A connection for an attribute set X is a set of relations that together carry
every attribute of X, is connected through shared attribute names, and has no
proper subset that is both. Covers are enumerated by increasing size, then in
lexicographic member order.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import networkx as nx

from rosi.catalog.types import Catalog
from rosi.urm.errors import CatalogTooLargeForInference, NoConnection, UnknownAttribute
from rosi.urm.hypergraph import Hypergraph, connection_graph

logger = logging.getLogger(__name__)

MAX_INFERENCE_RELATIONS = 16


@dataclass(frozen=True, slots=True)
class Connection:
    relations: frozenset[str]

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(sorted(self.relations))

    def render(self) -> str:
        return "{" + ", ".join(self.members) + "}"


def check_attributes(attrs: Iterable[str], catalog: Catalog) -> None:
    unknown = sorted({a for a in attrs if a not in catalog.attribute_registry})
    if unknown:
        raise UnknownAttribute(
            f"Unknown attribute(s): {', '.join(unknown)}",
            details={"attributes": unknown},
        )


def _search_space(catalog: Catalog) -> tuple[str, ...]:
    if catalog.maximal_objects:
        names: set[str] = set()
        for obj in catalog.maximal_objects.values():
            names |= obj.members
        return tuple(sorted(names))
    return catalog.relation_names()


def minimal_connections(attrs: Iterable[str], catalog: Catalog) -> list[Connection]:
    """
    Raises:
        UnknownAttribute, NoConnection, CatalogTooLargeForInference.
    """
    wanted = frozenset(attrs)
    if not wanted:
        raise ValueError("minimal_connections needs at least one attribute")
    check_attributes(wanted, catalog)

    universe = _search_space(catalog)
    if len(universe) > MAX_INFERENCE_RELATIONS:
        raise CatalogTooLargeForInference(
            f"Inference over {len(universe)} relations exceeds the limit of {MAX_INFERENCE_RELATIONS}; "
            "name the relations with FROM",
            details={"relations": len(universe), "limit": MAX_INFERENCE_RELATIONS},
        )

    hypergraph: Hypergraph = connection_graph(catalog)
    graph = hypergraph.relation_graph()
    objects = [obj.members for obj in catalog.maximal_objects.values()]

    found: list[frozenset[str]] = []
    for size in range(1, len(universe) + 1):
        for combo in combinations(universe, size):
            members = frozenset(combo)
            if any(prev <= members for prev in found):
                continue
            if objects and not any(members <= obj for obj in objects):
                continue
            if not wanted <= hypergraph.covered(members):
                continue
            if size > 1 and not nx.is_connected(graph.subgraph(members)):
                continue
            found.append(members)

    if not found:
        if objects:
            message = f"No single maximal object connects: {', '.join(sorted(wanted))}"
        else:
            message = f"No connected set of relations covers: {', '.join(sorted(wanted))}"
        raise NoConnection(message, details={"attributes": sorted(wanted)})

    logger.debug("Connections for %s: %s", sorted(wanted), [sorted(c) for c in found])
    return [Connection(relations=c) for c in found]


def join_order(connection: Connection, catalog: Catalog) -> tuple[str, ...]:
    """
    Left-deep order: start from the smallest name, then repeatedly take the
    smallest remaining member sharing an attribute with those already joined.
    """
    remaining = list(connection.members)
    order = [remaining.pop(0)]
    joined = set(catalog.relations[order[0]].attribute_set)
    while remaining:
        for name in remaining:
            attrs = catalog.relations[name].attribute_set
            if attrs & joined:
                break
        else:
            raise NoConnection(f"Connection {connection.render()} is not connected")
        remaining.remove(name)
        order.append(name)
        joined |= attrs
    return tuple(order)
