from .returns import compute_returns
from .rollout import Trajectory, TrajectoryStep, run_episode
from .a2c import NumericsError, a2c_update
from .harness import EpisodeRow, RunMetrics, TrainConfig, evaluate, train

__all__ = [
    "compute_returns",
    "Trajectory",
    "TrajectoryStep",
    "run_episode",
    "NumericsError",
    "a2c_update",
    "EpisodeRow",
    "RunMetrics",
    "TrainConfig",
    "evaluate",
    "train",
]
