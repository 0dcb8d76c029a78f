"""Supervised probe: is the correct-put signal in a_graph learnable and transferable?

Trains the scorer MLP on put-action encodings for a subset of goal objects
and checks ranking on held-out goal objects, with and without the graph
component.  Fast iteration loop for fixture/embedding design.
"""
import numpy as np

from kgrl.data import data_path, KITCHEN_TRIPLES, WORD_VECTORS, NODE_VECTORS
from kgrl.kg import load_triples
from kgrl.embeddings import load_embeddings
from kgrl.agent import AgentConfig
from kgrl.agent.policy import PolicyAgent
from kgrl.env import generate_kitchen_cleanup
from kgrl.env.world import ActionCommand, _put_preposition
from kgrl.nn import Tape, Tensor, ops
from kgrl.nn.adam import Adam
from kgrl.nn.layers import xavier_uniform


def collect_rows(agent, spec, graph):
    """Rows [g; 0; a_gru; a_graph] for every (portable, furniture) put action."""
    g, z = agent._encode_graph(graph)
    rows, labels, owners = [], [], []
    for obj in [e.id for e in spec.portables]:
        for f in spec.holders:
            action = ActionCommand("put", obj, f.id, _put_preposition(f))
            a_gru = agent._encode_actions([action])
            a_graph = agent._action_graph_component([action], graph, z)
            row = np.concatenate([g.data, np.zeros(agent.config.hidden_dim),
                                  a_gru.data[0], a_graph.data[0]])
            rows.append(row)
            labels.append(1.0 if spec.goal_map.get(obj) == f.id else 0.0)
            owners.append(obj)
    return np.array(rows), np.array(labels), owners


def train_probe(rows, labels, owners, holdout_objs, use_graph, seed, steps=300):
    rng = np.random.default_rng(seed)
    x = rows.copy()
    if not use_graph:
        h = x.shape[1] // 4
        x[:, :h] = 0.0          # g
        x[:, 3 * h:] = 0.0      # a_graph
    train_idx = [i for i, o in enumerate(owners) if o not in holdout_objs]
    test_idx = [i for i, o in enumerate(owners) if o in holdout_objs]

    in_dim, m = x.shape[1], 64
    w2 = Tensor(xavier_uniform(rng, (in_dim, m)), requires_grad=True)
    b2 = Tensor(np.zeros(m), requires_grad=True)
    w1 = Tensor(xavier_uniform(rng, (m, 1))[:, 0], requires_grad=True)
    b1 = Tensor(np.zeros(()), requires_grad=True)
    params = {"w2": w2, "b2": b2, "w1": w1, "b1": b1}
    opt = Adam(params, lr=1e-3)

    xt_train = x[train_idx]
    y_train = labels[train_idx]
    pos_w = (len(y_train) - y_train.sum()) / max(y_train.sum(), 1.0)

    for step in range(steps):
        with Tape() as tape:
            logits = ops.add(ops.matmul(ops.relu(ops.add(ops.matmul(Tensor(xt_train), w2), b2)), w1), b1)
            # weighted logistic loss via softplus identities
            z = logits.data
            p = 1.0 / (1.0 + np.exp(-z))
            grad = (p - y_train) * np.where(y_train > 0, pos_w, 1.0)
            loss = ops.dot(logits, Tensor(grad / len(y_train)))  # surrogate with same gradient
        opt.zero_grad()
        tape.backward(loss)
        opt.step()

    def scores(idx):
        xi = x[idx]
        hid = np.maximum(xi @ w2.data + b2.data, 0.0)
        return hid @ w1.data + float(b1.data)

    # ranking metric: for each held-out goal object, does its correct put
    # outrank every wrong put of the same object?
    test_scores = scores(test_idx)
    test_labels = labels[test_idx]
    test_owners = [owners[i] for i in test_idx]
    wins = total = 0
    for obj in holdout_objs:
        idx = [k for k, o in enumerate(test_owners) if o == obj]
        if not any(test_labels[k] > 0 for k in idx):
            continue
        correct = max(test_scores[k] for k in idx if test_labels[k] > 0)
        rank = sum(1 for k in idx if test_labels[k] == 0 and test_scores[k] >= correct)
        total += 1
        wins += 1 if rank == 0 else 0
    train_scores = scores(train_idx)
    train_labels = labels[train_idx]
    auc = _auc(train_scores, train_labels)
    return wins, total, auc


def _auc(s, y):
    pos = s[y > 0]
    neg = s[y == 0]
    if len(pos) == 0 or len(neg) == 0:
        return float("nan")
    return float(np.mean([np.mean(p > neg) + 0.5 * np.mean(p == neg) for p in pos]))


def main():
    store = load_triples(data_path(KITCHEN_TRIPLES))
    wt = load_embeddings(data_path(WORD_VECTORS))
    nt = load_embeddings(data_path(NODE_VECTORS))
    spec = generate_kitchen_cleanup(0, 5, 2, store)
    goal_objs = sorted(spec.goal_map)
    print("goals:", spec.goal_map)

    for use_graph in (True, False):
        w_tot, t_tot, aucs = 0, 0, []
        for seed in range(5):
            np.random.seed()
            cfg = AgentConfig(variant="kg_evolve")
            agent = PolicyAgent(cfg, wt, nt, store, param_seed=(seed, 7))
            agent.begin_episode(spec)
            from kgrl.kg import extract_commonsense_subgraph
            graph = extract_commonsense_subgraph([e.id for e in spec.entities], store,
                                                 cfg.hops, cfg.node_cap)
            with Tape():
                rows, labels, owners = collect_rows(agent, spec, graph)
            holdout = goal_objs[3:]  # train on 3 goals, test on 2
            wins, total, auc = train_probe(rows, labels, owners, holdout,
                                           use_graph, seed)
            w_tot += wins; t_tot += total; aucs.append(auc)
        print(f"use_graph={use_graph}: held-out top-rank {w_tot}/{t_tot}, "
              f"train AUC {np.mean(aucs):.3f}")


if __name__ == "__main__":
    main()
