from typing import Iterable, Mapping

import networkx as nx


def relation_graph(attribute_sets: Mapping[str, frozenset[str]], members: Iterable[str] | None = None) -> nx.Graph:
    """
    Undirected graph over relation names with an edge wherever two relations share
    at least one attribute name. Each edge carries the shared names as `shared`.
    """
    names = sorted(attribute_sets if members is None else members)
    graph = nx.Graph()
    graph.add_nodes_from(names)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            shared = attribute_sets[a] & attribute_sets[b]
            if shared:
                graph.add_edge(a, b, shared=tuple(sorted(shared)))
    return graph


def is_connected(attribute_sets: Mapping[str, frozenset[str]], members: Iterable[str]) -> bool:
    """
    Whether `members` are linked pairwise-transitively by shared attribute names.
    A single relation is connected; the empty set is not.
    """
    names = list(members)
    if not names:
        return False
    return nx.is_connected(relation_graph(attribute_sets, names))
