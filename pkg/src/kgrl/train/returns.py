"""Discounted return computation."""
from __future__ import annotations


def compute_returns(rewards, gamma: float) -> list[float]:
    """R_t = r_t + gamma * R_{t+1}, with R = 0 past the terminal step."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must be in [0, 1], got {gamma}")
    returns = [0.0] * len(rewards)
    acc = 0.0
    for t in range(len(rewards) - 1, -1, -1):
        acc = rewards[t] + gamma * acc
        returns[t] = acc
    return returns
