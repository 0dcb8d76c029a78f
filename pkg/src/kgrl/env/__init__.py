from .entities import Entity, GameSpec, GameSpecError, spec_from_json, spec_to_json
from .world import (
    ActionCommand,
    ContractViolation,
    InadmissibleAction,
    Observation,
    StepResult,
    WorldState,
    admissible_actions,
    ground_truth_graph,
    render_observation,
    reset,
    step,
)
from .generate import GenerationError, generate_cooking_recipe, generate_kitchen_cleanup
from .oracle import OracleAgent, RandomAgent

__all__ = [
    "Entity",
    "GameSpec",
    "GameSpecError",
    "spec_from_json",
    "spec_to_json",
    "ActionCommand",
    "ContractViolation",
    "InadmissibleAction",
    "Observation",
    "StepResult",
    "WorldState",
    "admissible_actions",
    "ground_truth_graph",
    "render_observation",
    "reset",
    "step",
    "GenerationError",
    "generate_cooking_recipe",
    "generate_kitchen_cleanup",
    "OracleAgent",
    "RandomAgent",
]
