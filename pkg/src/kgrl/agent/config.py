"""Agent configuration: variant selection and architecture sizes.

The variant decides which graphs feed the aggregated graph at each step:

    random           no networks, uniform over admissible actions
    simple           empty graph (text only)
    kg_full          commonsense subgraph of all game entities, fixed at reset
    kg_evolve        commonsense subgraph grown from entities seen so far
    belief_full      the environment's ground-truth state graph
    belief_evolve    belief graph built from observed triples
    belief_kg_full   aggregate(ground truth, full commonsense)
    belief_kg_evolve aggregate(evolving belief, evolving commonsense)

Dimension defaults (word 50, node 50, hidden 64, 2 GCN layers, 1 hop,
64-node cap) are desk-scale choices; see the training config docs.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

VARIANTS = (
    "random",
    "simple",
    "kg_full",
    "kg_evolve",
    "belief_full",
    "belief_evolve",
    "belief_kg_full",
    "belief_kg_evolve",
)


@dataclass(frozen=True)
class AgentConfig:
    variant: str = "simple"
    word_dim: int = 50     # d: word-embedding size
    node_dim: int = 50     # f: node-embedding size
    hidden_dim: int = 64   # h: GRU/GCN width
    gcn_layers: int = 2    # L
    hops: int = 1
    node_cap: int = 64
    mlp_dim: int = 64      # scorer/value hidden width
    temperature: float = 1.0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.gcn_layers < 1:
            raise ValueError("gcn_layers must be >= 1")

    @property
    def uses_commonsense(self) -> bool:
        return self.variant in ("kg_full", "kg_evolve", "belief_kg_full", "belief_kg_evolve")

    @property
    def uses_belief(self) -> bool:
        return self.variant in ("belief_full", "belief_evolve", "belief_kg_full", "belief_kg_evolve")

    @property
    def full_commonsense(self) -> bool:
        return self.variant in ("kg_full", "belief_kg_full")

    @property
    def full_belief(self) -> bool:
        return self.variant in ("belief_full", "belief_kg_full")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "AgentConfig":
        return cls(**json.loads(text))
