"""Scripted agents used as test fixtures and CLI baselines.

The oracle replays the goal map optimally (2 moves per goal); the random
agent samples uniformly from the admissible list.  Both present the same
minimal interface the rollout loop expects: begin_episode / choose.
"""
from __future__ import annotations

import numpy as np

from .entities import COOKING_RECIPE, KITCHEN_CLEANUP, GameSpec
from .world import ActionCommand, Observation, _put_preposition


class OracleAgent:
    """Deterministic optimal play read straight off the game spec."""

    name = "oracle"

    def __init__(self):
        self._plan: list[str] = []
        self._cursor = 0

    def begin_episode(self, spec: GameSpec) -> None:
        plan: list[ActionCommand] = []
        if spec.task == KITCHEN_CLEANUP:
            for obj in sorted(spec.goal_map):
                source = spec.initial_placement[obj]
                target = spec.entity(spec.goal_map[obj])
                plan.append(ActionCommand("take", obj, source, "from"))
                plan.append(ActionCommand("put", obj, target.id, _put_preposition(target)))
        elif spec.task == COOKING_RECIPE:
            for ing in spec.recipe:
                plan.append(ActionCommand("take", ing, spec.initial_placement[ing], "from"))
            if spec.recipe:
                plan.append(ActionCommand("prepare"))
        self._plan = [a.text for a in plan]
        self._cursor = 0

    def choose(self, observation: Observation, admissible: list[ActionCommand],
               rng: np.random.Generator | None = None) -> int:
        if self._cursor >= len(self._plan):
            return next(i for i, a in enumerate(admissible) if a.verb == "look")
        wanted = self._plan[self._cursor]
        for i, action in enumerate(admissible):
            if action.text == wanted:
                self._cursor += 1
                return i
        raise RuntimeError(f"oracle plan step {wanted!r} not admissible")


class RandomAgent:
    """Uniform choice over the admissible list."""

    name = "random"

    def begin_episode(self, spec: GameSpec) -> None:
        pass

    def choose(self, observation: Observation, admissible: list[ActionCommand],
               rng: np.random.Generator | None = None) -> int:
        if rng is None:
            raise ValueError("random agent needs an rng")
        return int(rng.integers(len(admissible)))
