"""The policy: hierarchical GRU text encoders, GCN graph encoder, action scorer.

Per step the agent (non-random variants):
  1. links observation tokens against the triple store to grow seen_entities,
  2. updates its graphs per variant and aggregates them into G_t,
  3. encodes G_t with stacked GCN layers over node embeddings, mean-pooled
     into g_t, and the observation tokens into o_t (GRU over word vectors),
  4. advances the recurrent summary s_t = GRU(s_{t-1}, o_t),
  5. encodes each admissible action (GRU over its tokens, plus the mean of
     updated node vectors for graph nodes mentioned in the action text),
  6. scores each action with a shared two-layer MLP over [g; s; a_i] and
     samples (train) or argmaxes (eval) the softmax.

Every variant runs the same network over a different G_t; the simple
variant's graph is empty, making its graph features exactly zero.  Action
encodings are cached per episode (parameters only change between episodes),
so repeated actions share tape nodes; the backward pass accumulates through
the shared subgraph correctly.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..embeddings import EmbeddingTable, embed_node, embed_token
from ..env.world import ActionCommand, Observation
from ..kg.graph import Graph, aggregate, update_belief_graph
from ..kg.linking import link_entities, mentioned_labels
from ..kg.subgraph import extract_commonsense_subgraph, update_evolve_graph
from ..kg.triples import Triple, TripleStore
from ..nn import ops
from ..nn.layers import (
    encode_token_batch,
    encode_token_matrix,
    gcn_layer,
    gcn_propagation_matrix,
    gru_cell,
    init_gru,
    xavier_uniform,
)
from ..nn.tensor import Tensor, record_op
from .config import AgentConfig

_EMPTY = Graph()


@dataclass
class AgentState:
    """Per-episode recurrent state: summary vector, graphs, seen entities."""
    s: Tensor
    commonsense: Graph
    belief: Graph
    graph: Graph
    seen: frozenset[str]
    step: int


@dataclass
class PolicyOutput:
    probs: np.ndarray
    chosen: int
    value: float | None = None
    logprob_t: Tensor | None = None
    value_t: Tensor | None = None
    entropy_t: Tensor | None = None


class PolicyAgent:
    def __init__(self, config: AgentConfig, word_table: EmbeddingTable | None = None,
                 node_table: EmbeddingTable | None = None, store: TripleStore | None = None,
                 param_seed: int = 0):
        self.config = config
        self.word_table = word_table
        self.node_table = node_table
        self.store = store
        self.params: dict[str, Tensor] = {}
        if config.variant != "random":
            if word_table is None:
                raise ValueError(f"variant {config.variant} needs a word table")
            if config.uses_commonsense and store is None:
                raise ValueError(f"variant {config.variant} needs a triple store")
            self._build_params(param_seed)
        self._tok_vecs: dict[str, np.ndarray] = {}
        self._node_vecs: dict[str, np.ndarray] = {}
        self._text_mats: dict[tuple[str, ...], np.ndarray] = {}
        self._episode_action_enc: dict[str, Tensor] = {}
        self._episode_obs_enc: dict[tuple[str, ...], Tensor] = {}

    @property
    def name(self) -> str:
        return self.config.variant

    # -- parameters ---------------------------------------------------------

    def _build_params(self, seed: int) -> None:
        cfg = self.config
        rng = np.random.default_rng(seed)
        self.gru_obs = init_gru(rng, cfg.word_dim, cfg.hidden_dim)
        self.gru_act = init_gru(rng, cfg.word_dim, cfg.hidden_dim)
        self.gru_state = init_gru(rng, cfg.hidden_dim, cfg.hidden_dim)
        for prefix, gru in (("obs_gru", self.gru_obs), ("act_gru", self.gru_act),
                            ("state_gru", self.gru_state)):
            for k, t in gru.tensors().items():
                self.params[f"{prefix}.{k}"] = t
        self.gcn_ws: list[Tensor] = []
        for layer in range(cfg.gcn_layers):
            d_in = cfg.node_dim if layer == 0 else cfg.hidden_dim
            w = Tensor(xavier_uniform(rng, (d_in, cfg.hidden_dim)), requires_grad=True)
            self.gcn_ws.append(w)
            self.params[f"gcn.{layer}.w"] = w
        h, m = cfg.hidden_dim, cfg.mlp_dim
        scorer_in = 4 * h  # [g; s; a_gru; a_graph]
        self.params["scorer.w2"] = Tensor(xavier_uniform(rng, (scorer_in, m)), requires_grad=True)
        self.params["scorer.b2"] = Tensor(np.zeros(m), requires_grad=True)
        self.params["scorer.w1"] = Tensor(xavier_uniform(rng, (m, 1))[:, 0], requires_grad=True)
        self.params["scorer.b1"] = Tensor(np.zeros(()), requires_grad=True)
        self.params["value.w"] = Tensor(xavier_uniform(rng, (2 * h, m)), requires_grad=True)
        self.params["value.b"] = Tensor(np.zeros(m), requires_grad=True)
        self.params["value.v"] = Tensor(xavier_uniform(rng, (m, 1))[:, 0], requires_grad=True)

    def load_params(self, arrays: dict[str, np.ndarray]) -> None:
        missing = set(self.params) ^ set(arrays)
        if missing:
            raise ValueError(f"checkpoint/param name mismatch: {sorted(missing)}")
        for name, arr in arrays.items():
            if self.params[name].data.shape != arr.shape:
                raise ValueError(f"{name}: shape {arr.shape} != {self.params[name].data.shape}")
            self.params[name].data[...] = arr

    # -- embeddings ---------------------------------------------------------

    def _token_vec(self, token: str) -> np.ndarray:
        v = self._tok_vecs.get(token)
        if v is None:
            v = embed_token(self.word_table, token)
            self._tok_vecs[token] = v
        return v

    def _text_matrix(self, tokens: tuple[str, ...]) -> np.ndarray:
        mat = self._text_mats.get(tokens)
        if mat is None:
            mat = np.stack([self._token_vec(t) for t in tokens])
            self._text_mats[tokens] = mat
            if len(self._text_mats) > 100_000:
                self._text_mats.clear()
        return mat

    def _node_vec(self, label: str) -> np.ndarray:
        v = self._node_vecs.get(label)
        if v is None:
            v = embed_node(self.word_table, self.node_table, label)
            self._node_vecs[label] = v
        return v

    # -- episode flow -------------------------------------------------------

    def begin_episode(self, spec) -> AgentState:
        cfg = self.config
        self._episode_action_enc = {}
        self._episode_obs_enc = {}
        commonsense = _EMPTY
        if cfg.uses_commonsense and cfg.full_commonsense:
            commonsense = extract_commonsense_subgraph(
                [e.id for e in spec.entities], self.store, cfg.hops, cfg.node_cap)
        s0 = Tensor(np.zeros(cfg.hidden_dim)) if cfg.variant != "random" else Tensor(np.zeros(0))
        return AgentState(s=s0, commonsense=commonsense, belief=_EMPTY,
                          graph=_EMPTY, seen=frozenset(), step=0)

    def _update_graphs(self, state: AgentState, obs: Observation,
                       ground_truth: Graph | None) -> AgentState:
        cfg = self.config
        seen = state.seen
        if self.store is not None:
            linked = {m.label for m in link_entities(obs.tokens, self.store)}
            if not linked <= seen:
                seen = frozenset(seen | linked)
        commonsense = state.commonsense
        if cfg.uses_commonsense and not cfg.full_commonsense and seen is not state.seen:
            commonsense = update_evolve_graph(commonsense, seen, self.store,
                                              cfg.hops, cfg.node_cap)
        belief = state.belief
        if cfg.uses_belief:
            if cfg.full_belief:
                if ground_truth is None:
                    raise ValueError(f"variant {cfg.variant} needs the ground-truth graph")
                belief = ground_truth
            else:
                observed = [Triple(h, r, t) for h, r, t in obs.visible_triples]
                belief = update_belief_graph(belief, observed)
        if cfg.uses_belief and cfg.uses_commonsense:
            graph = aggregate(belief, commonsense)
        elif cfg.uses_belief:
            graph = belief
        elif cfg.uses_commonsense:
            graph = commonsense
        else:
            graph = _EMPTY
        return replace(state, seen=seen, commonsense=commonsense, belief=belief, graph=graph)

    # -- encoders -----------------------------------------------------------

    def _encode_graph(self, graph: Graph) -> tuple[Tensor, Tensor | None]:
        """Return (g, Z): pooled graph vector and updated node matrix."""
        cfg = self.config
        if len(graph) == 0:
            return Tensor(np.zeros(cfg.hidden_dim)), None
        cached = getattr(graph, "_gcn_inputs", None)
        if cached is None:
            feats = np.stack([self._node_vec(n) for n in graph.nodes])
            prop = gcn_propagation_matrix(graph.undirected_adjacency())
            cached = (feats, prop)
            graph._gcn_inputs = cached
        feats, prop = cached
        z = Tensor(feats)
        for w in self.gcn_ws:
            z = gcn_layer(z, prop, w)
        return ops.mean_rows(z), z

    def _encode_actions(self, admissible: list[ActionCommand]) -> Tensor:
        """GRU encodings for the admissible list, shape (|A|, h)."""
        cache = self._episode_action_enc
        new = [a for a in admissible if a.text not in cache]
        if new:
            mats = [self._text_matrix(a.tokens) for a in new]
            t_max = max(m.shape[0] for m in mats)
            xpad = np.zeros((len(new), t_max, self.config.word_dim))
            lengths = np.empty(len(new), dtype=np.int64)
            for i, m in enumerate(mats):
                xpad[i, :m.shape[0]] = m
                lengths[i] = m.shape[0]
            batch = encode_token_batch(xpad, lengths, self.gru_act)
            for i, a in enumerate(new):
                cache[a.text] = _row(batch, i)
        return _stack_rows([cache[a.text] for a in admissible])

    def _action_graph_component(self, admissible: list[ActionCommand],
                                graph: Graph, z: Tensor | None) -> Tensor:
        """Mean of updated node vectors mentioned by each action (zeros if none)."""
        n_act = len(admissible)
        if z is None:
            return Tensor(np.zeros((n_act, self.config.hidden_dim)))
        node_index = {n: i for i, n in enumerate(graph.nodes)}
        m = np.zeros((n_act, len(node_index)))
        for i, action in enumerate(admissible):
            labels = mentioned_labels(action.tokens, graph)
            if labels:
                w = 1.0 / len(labels)
                for label in labels:
                    m[i, node_index[label]] = w
        return ops.const_matmul(m, z)

    # -- the step -----------------------------------------------------------

    def act(self, state: AgentState, obs: Observation, admissible: list[ActionCommand],
            mode: str = "train", rng: np.random.Generator | None = None,
            ground_truth: Graph | None = None) -> tuple[PolicyOutput, AgentState]:
        if not admissible:
            raise ValueError("act() requires at least one admissible action")
        if mode not in ("train", "eval"):
            raise ValueError(f"unknown mode {mode!r}")
        if self.config.variant == "random":
            if rng is None:
                raise ValueError("random variant needs an rng")
            n = len(admissible)
            out = PolicyOutput(probs=np.full(n, 1.0 / n), chosen=int(rng.integers(n)))
            return out, replace(state, step=state.step + 1)

        state = self._update_graphs(state, obs, ground_truth)
        g, z = self._encode_graph(state.graph)
        o = self._episode_obs_enc.get(obs.tokens)
        if o is None:
            o = encode_token_matrix(self._text_matrix(obs.tokens), self.gru_obs)
            self._episode_obs_enc[obs.tokens] = o
        s = gru_cell(state.s, o, self.gru_state)

        a_gru = self._encode_actions(admissible)
        a_graph = self._action_graph_component(admissible, state.graph, z)
        gs = ops.concat([g, s])
        rows = ops.hconcat(ops.tile_rows(gs, len(admissible)), ops.hconcat(a_gru, a_graph))

        hidden = ops.relu(ops.add(ops.matmul(rows, self.params["scorer.w2"]),
                                  self.params["scorer.b2"]))
        logits = ops.add(ops.matmul(hidden, self.params["scorer.w1"]), self.params["scorer.b1"])
        if self.config.temperature != 1.0:
            logits = ops.scale(logits, 1.0 / self.config.temperature)
        probs = ops.softmax(logits)
        logp = ops.log_softmax(logits)
        value = ops.dot(ops.relu(ops.add(ops.matmul(gs, self.params["value.w"]),
                                         self.params["value.b"])), self.params["value.v"])

        p = probs.data
        if mode == "train":
            if rng is None:
                raise ValueError("train mode needs an rng for sampling")
            chosen = int(rng.choice(len(p), p=p / p.sum()))
        else:
            chosen = int(np.argmax(p))

        out = PolicyOutput(
            probs=p.copy(),
            chosen=chosen,
            value=float(value.data),
            logprob_t=ops.index(logp, chosen),
            value_t=value,
            entropy_t=ops.neg(ops.dot(probs, logp)),
        )
        new_state = replace(state, s=s, step=state.step + 1)
        return out, new_state


def _row(matrix: Tensor, i: int) -> Tensor:
    out = Tensor(matrix.data[i])

    def backward(g):
        if matrix.requires_grad:
            full = np.zeros_like(matrix.data)
            full[i] = g
            matrix.accumulate_grad(full)

    return record_op(out, (matrix,), backward)


def _stack_rows(rows: list[Tensor]) -> Tensor:
    out = Tensor(np.stack([r.data for r in rows]))

    def backward(g):
        for i, r in enumerate(rows):
            if r.requires_grad:
                r.accumulate_grad(g[i])

    return record_op(out, tuple(rows), backward)
