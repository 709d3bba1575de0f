from dataclasses import dataclass, field
from typing import Iterable, Mapping

import networkx as nx

from rosi.catalog.graph import relation_graph
from rosi.catalog.types import Catalog


@dataclass(frozen=True, slots=True)
class Hypergraph:
    """
    Attribute/relation incidence: nodes are attribute names, each relation is a
    hyperedge over its attribute set.
    """
    nodes: frozenset[str] = frozenset()
    edges: Mapping[str, frozenset[str]] = field(default_factory=dict)

    def homes(self, attr: str) -> frozenset[str]:
        return frozenset(name for name, attrs in self.edges.items() if attr in attrs)

    def covered(self, members: Iterable[str]) -> frozenset[str]:
        out: set[str] = set()
        for name in members:
            out |= self.edges[name]
        return frozenset(out)

    def relation_graph(self) -> nx.Graph:
        """
        Relations as vertices, adjacent when their hyperedges intersect.
        """
        return relation_graph(self.edges)


def connection_graph(catalog: Catalog) -> Hypergraph:
    edges = {name: schema.attribute_set for name, schema in catalog.relations.items()}
    nodes = frozenset().union(*edges.values()) if edges else frozenset()
    return Hypergraph(nodes=nodes, edges=edges)
