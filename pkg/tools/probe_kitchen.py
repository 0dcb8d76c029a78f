"""Scratch experiment driver for the kitchen ordering (not part of the package)."""
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np


def run_one(args):
    variant, seed, episodes = args
    os.environ.setdefault("OMP_NUM_THREADS", "1")
    from kgrl.data import data_path, KITCHEN_TRIPLES, WORD_VECTORS, NODE_VECTORS
    from kgrl.kg import load_triples
    from kgrl.embeddings import load_embeddings
    from kgrl.train import TrainConfig, train

    store = load_triples(data_path(KITCHEN_TRIPLES))
    wt = load_embeddings(data_path(WORD_VECTORS))
    nt = load_embeddings(data_path(NODE_VECTORS))
    cfg = TrainConfig(task="kitchen_cleanup", variant=variant, runs=1, episodes=episodes,
                      run_seeds=(seed,), n_goal=5, n_distractor=2)
    m = train(cfg, wt, nt, store)
    scores = [r.norm_score for r in m.rows]
    moves = [r.moves for r in m.rows]
    final = float(np.mean(scores[-50:]))
    final_moves = float(np.mean(moves[-50:]))
    curve = [round(float(np.mean(scores[i:i + 50])), 2) for i in range(0, episodes, 50)]
    return variant, seed, final, final_moves, curve


if __name__ == "__main__":
    episodes = int(sys.argv[1]) if len(sys.argv) > 1 else 300
    seeds = [0, 1, 2]
    variants = ["random", "simple", "kg_evolve", "kg_full"]
    jobs = [(v, s, episodes) for v in variants for s in seeds]
    t0 = time.time()
    with ProcessPoolExecutor(max_workers=6) as ex:
        results = list(ex.map(run_one, jobs))
    by_variant = {}
    for variant, seed, final, fmoves, curve in results:
        by_variant.setdefault(variant, []).append((seed, final, fmoves, curve))
        print(f"{variant:10s} seed{seed} final50={final:.3f} moves={fmoves:.1f} curve={curve}")
    print(f"\n{time.time()-t0:.0f}s total")
    for v in variants:
        finals = [f for _, f, _, _ in by_variant[v]]
        print(f"{v:10s} mean final50 = {np.mean(finals):.3f} (seeds: {[round(f,2) for f in finals]})")
