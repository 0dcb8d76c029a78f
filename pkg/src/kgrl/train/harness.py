"""Experiment harness: multi-run training, evaluation, metrics CSV export.

Reproduces the experiment protocols: kitchen cleanup trains on a single
generated game; cooking cycles its games round-robin.  Every stochastic
component is seeded, so a config maps to byte-identical CSVs and
checkpoints across invocations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from ..agent.config import AgentConfig
from ..agent.policy import PolicyAgent
from ..embeddings import EmbeddingTable
from ..env.entities import COOKING_RECIPE, KITCHEN_CLEANUP, GameSpec
from ..env.generate import generate_cooking_recipe, generate_kitchen_cleanup
from ..kg.triples import TripleStore
from ..nn.adam import Adam
from ..nn.checkpoint import save_checkpoint
from .a2c import a2c_update
from .rollout import run_episode


@dataclass(frozen=True)
class TrainConfig:
    task: str = KITCHEN_CLEANUP
    variant: str = "simple"
    runs: int = 5
    episodes: int = 500
    run_seeds: tuple[int, ...] | None = None  # default: 0..runs-1
    game_seed: int = 0
    n_goal: int = 10
    n_distractor: int = 5
    n_games: int = 20            # cooking: games cycled round-robin
    n_food: int = 4
    max_steps: int | None = None  # None: task default (kitchen 50, cooking 20)
    gamma: float = 0.9
    lr: float = 1e-3
    value_coef: float = 0.5
    entropy_coef: float = 0.01
    rollouts_per_update: int = 1
    agent: AgentConfig = field(default_factory=AgentConfig)

    def seeds(self) -> tuple[int, ...]:
        if self.run_seeds is not None:
            if len(self.run_seeds) != self.runs:
                raise ValueError("run_seeds length must equal runs")
            return tuple(self.run_seeds)
        return tuple(range(self.runs))


@dataclass(frozen=True)
class EpisodeRow:
    run: int
    episode: int
    score: float
    norm_score: float
    moves: int
    ret: float


class RunMetrics:
    """Per-(run, episode) rows plus aggregation over runs."""

    CSV_HEADER = "run,episode,score,norm_score,moves,return"
    AGG_HEADER = "episode,mean_score,std_score,mean_moves,std_moves"

    def __init__(self, rows: list[EpisodeRow] | None = None):
        self.rows: list[EpisodeRow] = rows or []

    def add(self, row: EpisodeRow) -> None:
        self.rows.append(row)

    def runs(self) -> list[int]:
        seen: dict[int, None] = {}
        for r in self.rows:
            seen.setdefault(r.run, None)
        return list(seen)

    def _by_run(self) -> dict[int, list[EpisodeRow]]:
        out: dict[int, list[EpisodeRow]] = {}
        for r in self.rows:
            out.setdefault(r.run, []).append(r)
        return out

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.CSV_HEADER + "\n")
            for r in self.rows:
                fh.write(f"{r.run},{r.episode},{r.score:.6f},{r.norm_score:.6f},"
                         f"{r.moves},{r.ret:.6f}\n")

    def aggregate(self, window: int = 20) -> list[tuple[int, float, float, float, float]]:
        """Per-episode mean +- std over runs of window-smoothed score and moves."""
        by_run = self._by_run()
        if not by_run:
            return []
        n_ep = min(len(rows) for rows in by_run.values())
        out = []
        for e in range(n_ep):
            lo = max(0, e - window + 1)
            scores, moves = [], []
            for rows in by_run.values():
                chunk = rows[lo:e + 1]
                scores.append(sum(r.score for r in chunk) / len(chunk))
                moves.append(sum(r.moves for r in chunk) / len(chunk))
            out.append((e, _mean(scores), _std(scores), _mean(moves), _std(moves)))
        return out

    def aggregate_to_csv(self, path, window: int = 20) -> None:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.AGG_HEADER + "\n")
            for e, ms, ss, mm, sm in self.aggregate(window):
                fh.write(f"{e},{ms:.6f},{ss:.6f},{mm:.6f},{sm:.6f}\n")

    def final_window(self, window: int = 50) -> dict[int, dict[str, float]]:
        """Per-run means of normalized score and moves over the last `window` episodes."""
        out = {}
        for run, rows in self._by_run().items():
            tail = rows[-window:]
            out[run] = {
                "norm_score": _mean([r.norm_score for r in tail]),
                "score": _mean([r.score for r in tail]),
                "moves": _mean([float(r.moves) for r in tail]),
            }
        return out


def _mean(xs) -> float:
    return sum(xs) / len(xs) if xs else math.nan


def _std(xs) -> float:
    if not xs:
        return math.nan
    m = _mean(xs)
    return math.sqrt(sum((x - m) ** 2 for x in xs) / len(xs))


def build_specs(cfg: TrainConfig, store: TripleStore | None) -> list[GameSpec]:
    if cfg.task == KITCHEN_CLEANUP:
        if store is None:
            raise ValueError("kitchen cleanup generation needs a triple store")
        kwargs = {} if cfg.max_steps is None else {"max_steps": cfg.max_steps}
        return [generate_kitchen_cleanup(cfg.game_seed, cfg.n_goal, cfg.n_distractor,
                                         store, **kwargs)]
    if cfg.task == COOKING_RECIPE:
        kwargs = {} if cfg.max_steps is None else {"max_steps": cfg.max_steps}
        return [generate_cooking_recipe(cfg.game_seed + i, cfg.n_food, **kwargs)
                for i in range(cfg.n_games)]
    raise ValueError(f"unknown task {cfg.task!r}")


def make_agent(cfg: TrainConfig, word_table: EmbeddingTable | None,
               node_table: EmbeddingTable | None, store: TripleStore | None,
               run_seed: int) -> PolicyAgent:
    agent_cfg = replace(cfg.agent, variant=cfg.variant)
    return PolicyAgent(agent_cfg, word_table, node_table, store,
                       param_seed=(run_seed, 0))


def train(cfg: TrainConfig, word_table: EmbeddingTable | None = None,
          node_table: EmbeddingTable | None = None, store: TripleStore | None = None,
          specs: list[GameSpec] | None = None, out_dir: str | Path | None = None,
          smoothing_window: int = 20) -> RunMetrics:
    """Train `runs` fresh agents and return (and optionally write) metrics."""
    specs = specs if specs is not None else build_specs(cfg, store)
    metrics = RunMetrics()
    out_path = Path(out_dir) if out_dir is not None else None
    if out_path is not None:
        out_path.mkdir(parents=True, exist_ok=True)

    for run_seed in cfg.seeds():
        agent = make_agent(cfg, word_table, node_table, store, run_seed)
        learned = bool(agent.params)
        optimizer = Adam(agent.params, lr=cfg.lr) if learned else None
        rng = np.random.default_rng((run_seed, 1))
        pending = []
        for episode in range(cfg.episodes):
            spec = specs[episode % len(specs)]
            traj = run_episode(agent, spec, mode="train", rng=rng)
            if learned and traj.steps:
                pending.append(traj)
                if len(pending) >= cfg.rollouts_per_update:
                    a2c_update(pending, optimizer, cfg.gamma, cfg.value_coef,
                               cfg.entropy_coef)
                    pending = []
            norm = traj.score / spec.max_score if spec.max_score else 0.0
            metrics.add(EpisodeRow(run_seed, episode, traj.score, norm,
                                   traj.moves, sum(traj.rewards)))
        if learned and pending:
            a2c_update(pending, optimizer, cfg.gamma, cfg.value_coef, cfg.entropy_coef)
        if out_path is not None:
            save_checkpoint(out_path / f"{cfg.variant}_run{run_seed}.ckpt", agent.params,
                            meta={"variant": cfg.variant, "run_seed": run_seed,
                                  "task": cfg.task, "episodes": cfg.episodes})

    if out_path is not None:
        metrics.to_csv(out_path / f"{cfg.variant}_metrics.csv")
        metrics.aggregate_to_csv(out_path / f"{cfg.variant}_aggregate.csv",
                                 window=smoothing_window)
    return metrics


def evaluate(agent, specs: list[GameSpec], n_episodes: int,
             rng_seed: int = 0) -> RunMetrics:
    """Greedy (argmax) episodes with no parameter updates."""
    metrics = RunMetrics()
    rng = np.random.default_rng((rng_seed, 2))
    for episode in range(n_episodes):
        spec = specs[episode % len(specs)]
        traj = run_episode(agent, spec, mode="eval", rng=rng)
        norm = traj.score / spec.max_score if spec.max_score else 0.0
        metrics.add(EpisodeRow(0, episode, traj.score, norm, traj.moves,
                               sum(traj.rewards)))
    return metrics
