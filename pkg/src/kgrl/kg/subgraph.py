"""Commonsense subgraph extraction around a set of seed entities.

Expansion is breadth-first over *outgoing* store triples (head anchored at
the frontier), so seeding "apple" pulls in (apple, at_location,
refrigerator) but seeding "refrigerator" does not pull in every object
stored there.  Within each hop, edges are admitted in descending weight
order (ties broken lexicographically); expansion halts as soon as admitting
a triple would push the node count past ``node_cap``.
"""
from __future__ import annotations

from typing import Iterable

from .graph import COMMONSENSE, Graph
from .triples import Triple, TripleStore


def _admission_key(t: Triple):
    return (-t.weight, t.head, t.relation, t.tail)


def extract_commonsense_subgraph(entities: Iterable[str], store: TripleStore,
                                 hops: int = 1, node_cap: int = 64) -> Graph:
    """Subgraph of ``store`` reachable from the seed entities.

    Seeds that match a store label become nodes (in sorted order); unmatched
    seeds contribute nothing.  All edges are tagged commonsense.
    """
    if hops < 1:
        raise ValueError(f"hops must be >= 1, got {hops}")
    if node_cap < 1:
        raise ValueError(f"node_cap must be >= 1, got {node_cap}")

    g = Graph()
    frontier: list[str] = []
    for label in sorted(set(entities)):
        if label in store and len(g) < node_cap:
            g.add_node(label)
            frontier.append(label)

    for _ in range(hops):
        if not frontier:
            break
        candidates = sorted(
            (t for head in frontier for t in store.outgoing(head)),
            key=_admission_key,
        )
        next_frontier: dict[str, None] = {}
        for t in candidates:
            new_nodes = sum(1 for n in (t.head, t.tail) if n not in g)
            if len(g) + new_nodes > node_cap:
                return g
            if t.tail not in g:
                next_frontier[t.tail] = None
            g.add_edge(t.head, t.relation, t.tail, COMMONSENSE)
        frontier = list(next_frontier)
    return g


def update_evolve_graph(current: Graph, seen_labels: Iterable[str], store: TripleStore,
                        hops: int = 1, node_cap: int = 64) -> Graph:
    """Grow the evolve-mode commonsense graph from the labels seen so far.

    Computes ``current`` unioned with a fresh extraction seeded by
    ``seen_labels`` (callers pass the episode's accumulated seen-entity set,
    not just this step's mentions, so tail nodes never act as seeds).
    Monotone and idempotent: repeating a label set is a no-op and the result
    is returned as the same object when nothing changed.
    """
    fresh = extract_commonsense_subgraph(seen_labels, store, hops=hops, node_cap=node_cap)
    if fresh.node_set <= current.node_set and fresh.edge_set <= current.edge_set:
        return current
    merged = current.copy()
    for n in fresh:
        merged.add_node(n)
    for e in fresh.edges:
        merged.add_edge(*e)
    return merged
