"""Labeled directed multigraph used for belief, commonsense, and aggregated graphs.

Node order is insertion order and is what fixes the row order of the node
feature matrix downstream, so every operation here is deterministic about
the order in which it inserts nodes.
"""
from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

BELIEF = "belief"
COMMONSENSE = "commonsense"

# Relations that assert "this object is held here"; an object has one holder,
# so a new edge with one of these relations evicts the old one.
HOLDER_RELATIONS = frozenset({"in", "on", "carries"})

Edge = tuple[str, str, str, str]  # (head, relation, tail, provenance)


class Graph:
    def __init__(self, nodes: Iterable[str] = (), edges: Iterable[Edge] = ()):
        self._nodes: dict[str, None] = {}  # insertion-ordered set
        self._edges: set[Edge] = set()
        self._edge_order: list[Edge] = []
        for n in nodes:
            self.add_node(n)
        for e in edges:
            self.add_edge(*e)

    # -- construction -----------------------------------------------------

    def add_node(self, label: str) -> None:
        if label not in self._nodes:
            self._nodes[label] = None

    def add_edge(self, head: str, relation: str, tail: str, provenance: str) -> None:
        if provenance not in (BELIEF, COMMONSENSE):
            raise ValueError(f"unknown provenance {provenance!r}")
        self.add_node(head)
        self.add_node(tail)
        edge = (head, relation, tail, provenance)
        if edge not in self._edges:
            self._edges.add(edge)
            self._edge_order.append(edge)

    def copy(self) -> "Graph":
        g = Graph()
        g._nodes = dict(self._nodes)
        g._edges = set(self._edges)
        g._edge_order = list(self._edge_order)
        return g

    # -- views -------------------------------------------------------------

    @property
    def nodes(self) -> list[str]:
        return list(self._nodes)

    @property
    def node_set(self) -> set[str]:
        return set(self._nodes)

    @property
    def edges(self) -> list[Edge]:
        return list(self._edge_order)

    @property
    def edge_set(self) -> set[Edge]:
        return set(self._edges)

    def __contains__(self, label: str) -> bool:
        return label in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def num_edges(self) -> int:
        return len(self._edges)

    def __iter__(self) -> Iterator[str]:
        return iter(self._nodes)

    def __eq__(self, other) -> bool:
        """Set equality on nodes and tagged edges; node order is representational."""
        if not isinstance(other, Graph):
            return NotImplemented
        return self._nodes.keys() == other._nodes.keys() and self._edges == other._edges

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self)}, |E|={len(self._edges)})"

    # -- numeric view ------------------------------------------------------

    def undirected_adjacency(self) -> np.ndarray:
        """0/1 adjacency over nodes in insertion order.

        Edge direction, relation labels, and multi-edges are collapsed;
        no self-loops are added here (the GCN layer adds them).
        """
        index = {n: i for i, n in enumerate(self._nodes)}
        a = np.zeros((len(index), len(index)), dtype=np.float64)
        for head, _, tail, _ in self._edges:
            i, j = index[head], index[tail]
            if i != j:
                a[i, j] = 1.0
                a[j, i] = 1.0
        return a


def aggregate(belief: Graph, commonsense: Graph) -> Graph:
    """Merge belief and commonsense graphs on shared node labels.

    Node order is belief insertion order followed by commonsense nodes not
    already present, in their insertion order.  Edges are the set union,
    keeping provenance tags.
    """
    g = Graph()
    for n in belief:
        g.add_node(n)
    for n in commonsense:
        g.add_node(n)
    for e in belief.edges:
        g.add_edge(*e)
    for e in commonsense.edges:
        g.add_edge(*e)
    return g


def update_belief_graph(belief: Graph, observed) -> Graph:
    """Fold observed triples into the belief graph.

    For holder relations (in/on/carries) any existing belief edge with the
    same head and a holder relation is evicted first: an object has exactly
    one holder.  Other triples are appended.  Returns the input graph object
    unchanged when the observations carry no new information.
    """
    updates = []
    evict: set[Edge] = set()
    for t in observed:
        edge = (t.head, t.relation, t.tail, BELIEF)
        if t.relation in HOLDER_RELATIONS:
            stale = [e for e in belief.edges
                     if e[0] == t.head and e[1] in HOLDER_RELATIONS and e != edge]
            evict.update(stale)
            if edge not in belief.edge_set or stale:
                updates.append(edge)
        elif edge not in belief.edge_set:
            updates.append(edge)
    if not updates and not evict:
        return belief

    g = Graph()
    for n in belief:
        g.add_node(n)
    for e in belief.edges:
        if e not in evict:
            g.add_edge(*e)
    for e in updates:
        g.add_edge(*e)
    return g
