"""World state, action grammar, and observation rendering.

Visibility model: the room and its furniture are always described; objects
on supporters and carried objects are always visible.  Container contents
are hidden from the room description and are revealed only in the
observation generated right after an action that touched that container
(take from / put in).  This is what makes the game a POMDP and lets the
evolve-mode graphs grow within an episode.

step() is a pure transition: it returns a fresh WorldState and never
mutates its inputs, so independent episodes can run concurrently.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..kg.graph import BELIEF, Graph
from .entities import (
    COOKING_RECIPE,
    HOLDER_KINDS,
    INVENTORY,
    KITCHEN_CLEANUP,
    PLAYER,
    Entity,
    GameSpec,
)


class ContractViolation(Exception):
    """An operation was called outside its precondition."""


class InadmissibleAction(Exception):
    """step() received an action not admissible in the current state."""


@dataclass(frozen=True)
class ActionCommand:
    verb: str  # look | take | put | prepare
    obj: str | None = None
    holder: str | None = None
    preposition: str | None = None  # from | in | on

    @property
    def tokens(self) -> tuple[str, ...]:
        if self.verb == "look":
            return ("look",)
        if self.verb == "prepare":
            return ("prepare", "meal")
        obj_tokens = tuple(self.obj.split("_"))
        holder_tokens = tuple(self.holder.split("_"))
        if self.verb == "take":
            return ("take",) + obj_tokens + ("from", "the") + holder_tokens
        return ("put",) + obj_tokens + (self.preposition, "the") + holder_tokens

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class Observation:
    tokens: tuple[str, ...]
    visible_triples: tuple[tuple[str, str, str], ...]
    score_delta: int = 0

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class WorldState:
    spec: GameSpec
    placement: dict[str, str]  # portable id -> holder id or "inventory"
    satisfied_goals: frozenset[str]
    score: int
    steps: int

    @property
    def done(self) -> bool:
        return self.score >= self.spec.max_score or self.steps >= self.spec.max_steps

    def holder_of(self, obj: str) -> str:
        return self.placement[obj]

    def carried(self) -> list[str]:
        return [o for o, h in sorted(self.placement.items()) if h == INVENTORY]

    def contents(self, holder: str) -> list[str]:
        return [o for o, h in sorted(self.placement.items()) if h == holder]


@dataclass(frozen=True)
class StepResult:
    state: WorldState
    observation: Observation
    reward: float
    done: bool


def reset(spec: GameSpec) -> tuple[WorldState, Observation]:
    state = WorldState(
        spec=spec,
        placement=dict(spec.initial_placement),
        satisfied_goals=frozenset(),
        score=0,
        steps=0,
    )
    return state, render_observation(state, None)


def _put_preposition(holder: Entity) -> str:
    return "in" if holder.kind == "container" else "on"


def admissible_actions(state: WorldState) -> list[ActionCommand]:
    """All currently legal commands, sorted lexicographically by text."""
    if state.done:
        raise ContractViolation("admissible_actions called on terminal state")
    spec = state.spec
    actions = [ActionCommand("look")]
    carried = state.carried()
    for obj in sorted(state.placement):
        holder = state.placement[obj]
        if holder != INVENTORY:
            actions.append(ActionCommand("take", obj, holder, "from"))
    for obj in carried:
        for h in spec.holders:
            actions.append(ActionCommand("put", obj, h.id, _put_preposition(h)))
    if spec.task == COOKING_RECIPE and spec.recipe and all(i in carried for i in spec.recipe):
        actions.append(ActionCommand("prepare"))
    return sorted(actions, key=lambda a: a.text)


def _validate(state: WorldState, action: ActionCommand) -> None:
    spec = state.spec
    if state.done:
        raise InadmissibleAction("episode is over")
    if action.verb == "look":
        return
    if action.verb == "prepare":
        if spec.task != COOKING_RECIPE or not spec.recipe:
            raise InadmissibleAction("nothing to prepare in this game")
        if not all(i in state.carried() for i in spec.recipe):
            raise InadmissibleAction("recipe ingredients are not all carried")
        return
    if action.obj not in state.placement:
        raise InadmissibleAction(f"unknown or non-portable object {action.obj!r}")
    if action.verb == "take":
        if action.holder == INVENTORY or state.placement[action.obj] != action.holder:
            raise InadmissibleAction(f"{action.obj} is not at {action.holder}")
        return
    if action.verb == "put":
        if state.placement[action.obj] != INVENTORY:
            raise InadmissibleAction(f"{action.obj} is not carried")
        holder = spec._by_id.get(action.holder)
        if holder is None or holder.kind not in HOLDER_KINDS:
            raise InadmissibleAction(f"{action.holder!r} cannot hold things")
        if action.preposition != _put_preposition(holder):
            raise InadmissibleAction(f"wrong preposition for {action.holder}")
        return
    raise InadmissibleAction(f"unknown verb {action.verb!r}")


def step(state: WorldState, action: ActionCommand) -> StepResult:
    """Apply one action.  Reward is +1 exactly when a goal first becomes satisfied."""
    _validate(state, action)
    spec = state.spec
    placement = dict(state.placement)
    satisfied = set(state.satisfied_goals)
    reward = 0

    if action.verb == "take":
        placement[action.obj] = INVENTORY
        if spec.task == COOKING_RECIPE and action.obj in spec.recipe:
            key = f"taken:{action.obj}"
            if key not in satisfied:
                satisfied.add(key)
                reward += 1
    elif action.verb == "put":
        placement[action.obj] = action.holder
        if spec.task == KITCHEN_CLEANUP and spec.goal_map.get(action.obj) == action.holder:
            if action.obj not in satisfied:
                satisfied.add(action.obj)
                reward += 1
    elif action.verb == "prepare":
        if "meal" not in satisfied:
            satisfied.add("meal")
            reward += len(spec.recipe)

    new_state = WorldState(
        spec=spec,
        placement=placement,
        satisfied_goals=frozenset(satisfied),
        score=state.score + reward,
        steps=state.steps + 1,
    )
    obs = render_observation(new_state, action, score_delta=reward)
    return StepResult(new_state, obs, float(reward), new_state.done)


# -- observation rendering -------------------------------------------------

def _article(word: str) -> str:
    return "an" if word[0] in "aeiou" else "a"


def _noun_phrase(entity_id: str) -> list[str]:
    parts = entity_id.split("_")
    return [_article(parts[0])] + parts


def _listing(ids: list[str]) -> list[str]:
    phrases = [_noun_phrase(i) for i in ids]
    out: list[str] = []
    for k, p in enumerate(phrases):
        if k > 0:
            out.append("and" if k == len(phrases) - 1 else ",")
        out.extend(p)
    return out


def _feedback(action: ActionCommand) -> list[str]:
    if action.verb == "look":
        return ["you", "look", "around", "."]
    if action.verb == "prepare":
        return ["you", "prepare", "the", "meal", "."]
    obj = action.obj.split("_")
    holder = action.holder.split("_")
    if action.verb == "take":
        return ["you", "take", "the", *obj, "from", "the", *holder, "."]
    return ["you", "put", "the", *obj, action.preposition, "the", *holder, "."]


def render_observation(state: WorldState, last_action: ActionCommand | None,
                       score_delta: int = 0) -> Observation:
    """Templated text plus the placement triples projected onto visible entities."""
    spec = state.spec
    tokens: list[str] = []
    triples: list[tuple[str, str, str]] = []

    if last_action is not None:
        tokens += _feedback(last_action)
        if last_action.verb in ("take", "put"):
            holder = spec.entity(last_action.holder)
            if holder.kind == "container":
                inside = state.contents(holder.id)
                if inside:
                    tokens += ["in", "the", *holder.tokens, "there", "is", *_listing(inside), "."]
                else:
                    tokens += ["the", *holder.tokens, "is", "empty", "."]
                for obj in inside:
                    triples.append((obj, "in", holder.id))

    room = spec.room
    tokens += ["you", "are", "in", "the", *room.tokens, "."]
    furniture = list(spec.holders)
    if furniture:
        tokens += ["you", "see", *_listing([f.id for f in furniture]), "."]
        for f in furniture:
            triples.append((f.id, "at_location", room.id))
    for f in furniture:
        if f.kind == "supporter":
            on_top = state.contents(f.id)
            if on_top:
                tokens += ["on", "the", *f.tokens, "there", "is", *_listing(on_top), "."]
                for obj in on_top:
                    triples.append((obj, "on", f.id))

    if spec.task == COOKING_RECIPE and spec.recipe:
        tokens += ["the", "recipe", "says", ":", "gather"]
        tokens += _listing(list(spec.recipe))
        tokens += ["and", "prepare", "the", "meal", "."]
        for ing in spec.recipe:
            triples.append((ing, "part_of_recipe", "meal"))

    carried = state.carried()
    if carried:
        tokens += ["the", "player", "carries", *_listing(carried), "."]
        for obj in carried:
            triples.append((obj, "carries", PLAYER))
    else:
        tokens += ["the", "player", "carries", "nothing", "."]

    # dedupe while keeping order (a triple can enter twice, e.g. container reveal)
    seen: dict[tuple[str, str, str], None] = {}
    for t in triples:
        seen.setdefault(t, None)
    return Observation(tuple(tokens), tuple(seen), score_delta=score_delta)


def ground_truth_graph(state: WorldState) -> Graph:
    """The env-internal state graph handed to full-belief agent variants.

    Holds every portable's placement triple plus the goal (kitchen) or
    recipe (cooking) triples.  Nodes are spec entities plus "player".
    """
    spec = state.spec
    g = Graph()
    for obj in sorted(state.placement):
        holder = state.placement[obj]
        if holder == INVENTORY:
            g.add_edge(obj, "carries", PLAYER, BELIEF)
        else:
            rel = "in" if spec.entity(holder).kind == "container" else "on"
            g.add_edge(obj, rel, holder, BELIEF)
    if spec.task == KITCHEN_CLEANUP:
        for obj in sorted(spec.goal_map):
            g.add_edge(obj, "at_location", spec.goal_map[obj], BELIEF)
    else:
        for ing in spec.recipe:
            g.add_edge(ing, "part_of_recipe", "meal", BELIEF)
    return g
