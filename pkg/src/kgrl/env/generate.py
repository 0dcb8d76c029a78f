"""Seeded generators for the kitchen-cleanup and cooking-recipe games.

Kitchen cleanup draws goal objects and their target locations from the
commonsense triple store, so the knowledge graph genuinely encodes the
answers; distractor objects come from the same pool but get no goal entry.
"""
from __future__ import annotations

import random

from ..kg.triples import TripleStore
from .entities import COOKING_RECIPE, KITCHEN_CLEANUP, Entity, GameSpec

# Furniture the generators know how to place things at.  Labels double as
# triple-store tails, so they stay in sync with the bundled knowledge file.
KITCHEN_FURNITURE: dict[str, str] = {
    "refrigerator": "container",
    "cabinet": "container",
    "drawer": "container",
    "cupboard": "container",
    "trash_can": "container",
    "dishwasher": "container",
    "sink": "container",
    "table": "supporter",
    "counter": "supporter",
    "shelf": "supporter",
    "stove": "supporter",
}

COOKING_FOODS = (
    "banana", "carrot", "cheese", "egg", "flour", "lettuce",
    "milk", "onion", "pepper", "potato", "sugar", "tomato",
)

ROOM_ID = "kitchen"

DEFAULT_KITCHEN_MAX_STEPS = 50
DEFAULT_COOKING_MAX_STEPS = 20


class GenerationError(Exception):
    """Raised when the goal source cannot supply the requested game."""


def _goal_candidates(goal_source: TripleStore) -> dict[str, str]:
    """Portable object -> best target location, from at_location triples.

    Best = highest weight, ties broken by lexicographically smallest tail.
    """
    best: dict[str, tuple[float, str]] = {}
    for t in goal_source.triples:
        if t.relation != "at_location" or t.tail not in KITCHEN_FURNITURE:
            continue
        if t.head in KITCHEN_FURNITURE or t.head == ROOM_ID:
            continue
        cur = best.get(t.head)
        if cur is None or (-t.weight, t.tail) < (-cur[0], cur[1]):
            best[t.head] = (t.weight, t.tail)
    return {obj: target for obj, (_, target) in best.items()}


def _distractor_candidates(goal_source: TripleStore) -> list[str]:
    """Objects with no kitchen at_location triple: clutter with no right place."""
    goalable = set(_goal_candidates(goal_source))
    pool = set()
    for t in goal_source.triples:
        if t.head in KITCHEN_FURNITURE or t.head == ROOM_ID or t.head in goalable:
            continue
        pool.add(t.head)
    return sorted(pool)


def generate_kitchen_cleanup(seed: int, n_goal: int, n_distractor: int,
                             goal_source: TripleStore,
                             max_steps: int = DEFAULT_KITCHEN_MAX_STEPS) -> GameSpec:
    """Build a kitchen game whose goal map is read off the knowledge store.

    Each goal object starts somewhere other than its target, so the optimal
    episode is exactly 2 moves per goal.  Deterministic for a fixed seed.
    """
    if n_goal < 0 or n_distractor < 0:
        raise GenerationError("n_goal and n_distractor must be >= 0")
    rng = random.Random(seed)
    candidates = _goal_candidates(goal_source)
    pool = sorted(candidates)
    if len(pool) < n_goal:
        raise GenerationError(
            f"goal source has {len(pool)} objects with kitchen at_location "
            f"triples, need {n_goal}")
    d_pool = _distractor_candidates(goal_source)
    if len(d_pool) < n_distractor:
        raise GenerationError(
            f"goal source has {len(d_pool)} clutter objects (no kitchen "
            f"at_location), need {n_distractor} distractors")

    goal_objs = sorted(rng.sample(pool, n_goal))
    distractors = sorted(rng.sample(d_pool, n_distractor))
    goal_map = {obj: candidates[obj] for obj in goal_objs}

    # the whole furniture set is present: plenty of wrong places to put things
    furniture = sorted(KITCHEN_FURNITURE)

    placement: dict[str, str] = {}
    for obj in goal_objs:
        spots = [f for f in furniture if f != goal_map[obj]]
        placement[obj] = rng.choice(spots)
    for obj in distractors:
        placement[obj] = rng.choice(furniture)

    entities = [Entity(ROOM_ID, "room", False)]
    entities += [Entity(f, KITCHEN_FURNITURE[f], False) for f in furniture]
    entities += [Entity(obj, "object", True) for obj in sorted(goal_objs + distractors)]

    return GameSpec(
        task=KITCHEN_CLEANUP,
        seed=seed,
        entities=tuple(entities),
        initial_placement=placement,
        goal_map=goal_map,
        max_steps=max_steps,
        max_score=n_goal,
    )


def generate_cooking_recipe(seed: int, n_food_items: int,
                            max_steps: int = DEFAULT_COOKING_MAX_STEPS) -> GameSpec:
    """Build a level-1 cooking game: one room, one recipe ingredient.

    ``n_food_items`` food entities are placed on the counter or in the
    refrigerator; exactly one of them is the recipe ingredient, revealed in
    the first observation.  Scoring: +1 for taking the ingredient, +1 for
    preparing the meal.
    """
    if n_food_items < 1:
        raise GenerationError("n_food_items must be >= 1")
    if n_food_items > len(COOKING_FOODS):
        raise GenerationError(f"at most {len(COOKING_FOODS)} food items supported")
    rng = random.Random(seed)
    foods = sorted(rng.sample(COOKING_FOODS, n_food_items))
    ingredient = rng.choice(foods)

    furniture = ["counter", "refrigerator"]
    placement = {food: rng.choice(furniture) for food in foods}

    entities = [Entity(ROOM_ID, "room", False)]
    entities += [Entity(f, KITCHEN_FURNITURE[f], False) for f in furniture]
    entities += [Entity(food, "ingredient", True) for food in foods]
    entities.append(Entity("meal", "meal", False))

    return GameSpec(
        task=COOKING_RECIPE,
        seed=seed,
        entities=tuple(entities),
        initial_placement=placement,
        recipe=(ingredient,),
        max_steps=max_steps,
        max_score=2,
    )
