"""Episode rollouts: reset -> act -> step until done, recording everything
the A2C update needs.

In train mode a Tape spans the whole episode, so the recurrent state chain
and all shared action encodings stay connected for one backward pass; the
update re-enters the same tape to append its loss ops.
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass

import numpy as np

from ..env.entities import GameSpec
from ..env.world import ActionCommand, Observation, admissible_actions, ground_truth_graph, reset, step
from ..nn.tensor import Tape, Tensor


@dataclass
class TrajectoryStep:
    observation: Observation
    admissible: list[ActionCommand]
    chosen: int
    reward: float
    probs: np.ndarray | None = None
    logprob_t: Tensor | None = None
    value_t: Tensor | None = None
    entropy_t: Tensor | None = None


@dataclass
class Trajectory:
    steps: list[TrajectoryStep]
    tape: Tape | None
    score: float
    moves: int
    max_score: int

    @property
    def rewards(self) -> list[float]:
        return [s.reward for s in self.steps]


def _is_learned(agent) -> bool:
    return bool(getattr(agent, "params", None))


def _needs_ground_truth(agent) -> bool:
    cfg = getattr(agent, "config", None)
    return cfg is not None and cfg.full_belief


def run_episode(agent, spec: GameSpec, mode: str = "train",
                rng: np.random.Generator | None = None) -> Trajectory:
    """Roll one episode.  Gradients are recorded only for learned agents in train mode."""
    state, obs = reset(spec)
    scripted = hasattr(agent, "choose")
    if scripted:
        agent.begin_episode(spec)
        agent_state = None
    else:
        agent_state = agent.begin_episode(spec)

    wants_grad = mode == "train" and not scripted and _is_learned(agent)
    tape_ctx = Tape() if wants_grad else contextlib.nullcontext()
    steps: list[TrajectoryStep] = []
    with tape_ctx as tape:
        while not state.done:
            admissible = admissible_actions(state)
            if scripted:
                chosen = agent.choose(obs, admissible, rng)
                rec = TrajectoryStep(obs, admissible, chosen, 0.0)
            else:
                gt = ground_truth_graph(state) if _needs_ground_truth(agent) else None
                out, agent_state = agent.act(agent_state, obs, admissible,
                                             mode=mode, rng=rng, ground_truth=gt)
                chosen = out.chosen
                rec = TrajectoryStep(obs, admissible, chosen, 0.0, probs=out.probs,
                                     logprob_t=out.logprob_t, value_t=out.value_t,
                                     entropy_t=out.entropy_t)
            result = step(state, admissible[chosen])
            rec.reward = result.reward
            steps.append(rec)
            state, obs = result.state, result.observation

    return Trajectory(
        steps=steps,
        tape=tape if wants_grad else None,
        score=float(state.score),
        moves=state.steps,
        max_score=spec.max_score,
    )
