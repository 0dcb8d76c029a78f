"""Game entities and the serializable game specification."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property

ID_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

KINDS = ("object", "container", "supporter", "room", "ingredient", "meal")
HOLDER_KINDS = ("container", "supporter")

KITCHEN_CLEANUP = "kitchen_cleanup"
COOKING_RECIPE = "cooking_recipe"

INVENTORY = "inventory"
PLAYER = "player"


class GameSpecError(Exception):
    """Raised when a game specification violates its invariants."""


@dataclass(frozen=True)
class Entity:
    id: str
    kind: str
    portable: bool

    def __post_init__(self):
        if not ID_RE.match(self.id):
            raise GameSpecError(f"invalid entity id {self.id!r}")
        if self.kind not in KINDS:
            raise GameSpecError(f"unknown kind {self.kind!r} for {self.id}")
        if self.kind in ("container", "supporter", "room") and self.portable:
            raise GameSpecError(f"{self.kind} {self.id} cannot be portable")

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self.id.split("_"))


@dataclass(frozen=True)
class GameSpec:
    task: str
    seed: int
    entities: tuple[Entity, ...]
    initial_placement: dict[str, str]
    goal_map: dict[str, str] = field(default_factory=dict)
    recipe: tuple[str, ...] = ()
    max_steps: int = 50
    max_score: int = 0

    def __post_init__(self):
        if self.task not in (KITCHEN_CLEANUP, COOKING_RECIPE):
            raise GameSpecError(f"unknown task {self.task!r}")
        if self.max_steps < 1:
            raise GameSpecError("max_steps must be positive")
        by_id = {e.id: e for e in self.entities}
        if len(by_id) != len(self.entities):
            raise GameSpecError("duplicate entity ids")
        rooms = [e for e in self.entities if e.kind == "room"]
        if len(rooms) != 1:
            raise GameSpecError(f"expected exactly one room, got {len(rooms)}")
        for e in self.entities:
            if e.portable:
                holder = self.initial_placement.get(e.id)
                if holder is None:
                    raise GameSpecError(f"portable {e.id} has no initial placement")
                h = by_id.get(holder)
                if h is None or h.portable or h.kind not in HOLDER_KINDS:
                    raise GameSpecError(f"{e.id} placed at invalid holder {holder!r}")
        for obj, target in self.goal_map.items():
            if obj not in by_id or not by_id[obj].portable:
                raise GameSpecError(f"goal object {obj!r} is not a portable entity")
            if target not in by_id or by_id[target].kind not in HOLDER_KINDS:
                raise GameSpecError(f"goal target {target!r} is not a holder")
        for ing in self.recipe:
            if ing not in by_id or by_id[ing].kind != "ingredient":
                raise GameSpecError(f"recipe item {ing!r} is not an ingredient entity")
        if self.task == KITCHEN_CLEANUP and self.max_score != len(self.goal_map):
            raise GameSpecError("kitchen max_score must equal |goal_map|")
        if self.task == COOKING_RECIPE and self.max_score != 2 * len(self.recipe):
            raise GameSpecError("cooking max_score must equal 2*|recipe|")

    def entity(self, entity_id: str) -> Entity:
        return self._by_id[entity_id]

    @cached_property
    def _by_id(self) -> dict[str, Entity]:
        return {e.id: e for e in self.entities}

    @cached_property
    def room(self) -> Entity:
        return next(e for e in self.entities if e.kind == "room")

    @cached_property
    def holders(self) -> tuple[Entity, ...]:
        return tuple(e for e in self.entities if e.kind in HOLDER_KINDS)

    @cached_property
    def portables(self) -> tuple[Entity, ...]:
        return tuple(e for e in self.entities if e.portable)


def spec_to_json(spec: GameSpec) -> str:
    """Serialize with stable key order (byte-identical for equal specs)."""
    payload = {
        "task": spec.task,
        "seed": spec.seed,
        "entities": [{"id": e.id, "kind": e.kind, "portable": e.portable} for e in spec.entities],
        "initial_placement": dict(sorted(spec.initial_placement.items())),
        "max_steps": spec.max_steps,
        "max_score": spec.max_score,
    }
    if spec.task == KITCHEN_CLEANUP:
        payload["goal_map"] = dict(sorted(spec.goal_map.items()))
    else:
        payload["recipe"] = list(spec.recipe)
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def spec_from_json(text: str) -> GameSpec:
    raw = json.loads(text)
    try:
        return GameSpec(
            task=raw["task"],
            seed=raw["seed"],
            entities=tuple(Entity(e["id"], e["kind"], e["portable"]) for e in raw["entities"]),
            initial_placement=dict(raw["initial_placement"]),
            goal_map=dict(raw.get("goal_map", {})),
            recipe=tuple(raw.get("recipe", ())),
            max_steps=raw["max_steps"],
            max_score=raw["max_score"],
        )
    except KeyError as exc:
        raise GameSpecError(f"missing field {exc}") from exc
