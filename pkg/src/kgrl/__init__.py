"""Text-based-game RL with commonsense knowledge graphs.

Subpackages:
    env    -- seedable kitchen-cleanup / cooking-recipe game engine
    kg     -- triple store, entity linking, belief/commonsense graphs
    nn     -- minimal reverse-mode autodiff engine and layers
    agent  -- GRU/GCN policy and the agent variants
    train  -- A2C training harness and metrics
"""

__version__ = "0.1.0"
