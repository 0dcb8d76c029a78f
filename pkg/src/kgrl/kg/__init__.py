from .triples import Triple, TripleStore, TripleLoadError, load_triples, save_triples, ingest_conceptnet_dump
from .graph import Graph, aggregate, update_belief_graph, HOLDER_RELATIONS
from .linking import EntityMention, link_entities, normalize_tokens
from .subgraph import extract_commonsense_subgraph, update_evolve_graph

__all__ = [
    "Triple",
    "TripleStore",
    "TripleLoadError",
    "load_triples",
    "save_triples",
    "ingest_conceptnet_dump",
    "Graph",
    "aggregate",
    "update_belief_graph",
    "HOLDER_RELATIONS",
    "EntityMention",
    "link_entities",
    "normalize_tokens",
    "extract_commonsense_subgraph",
    "update_evolve_graph",
]
