"""Advantage actor-critic update on full-episode Monte-Carlo returns.

Loss = -sum_t A_t * log p_t(a_t) + value_coef * sum_t (R_t - V_t)^2
       - entropy_coef * sum_t H(p_t),
with A_t = R_t - V_t and V_t detached inside the policy term.  One Adam
step per call; several trajectories may be folded into a single step.
"""
from __future__ import annotations

import numpy as np

from ..nn import ops
from ..nn.adam import Adam
from ..nn.tensor import Tensor
from .returns import compute_returns
from .rollout import Trajectory


class NumericsError(Exception):
    """A loss component went non-finite; carries a diagnostic dump."""


def _trajectory_loss(traj: Trajectory, gamma: float, value_coef: float,
                     entropy_coef: float) -> tuple[Tensor, dict]:
    returns = compute_returns(traj.rewards, gamma)
    policy_terms, value_terms, entropy_terms = [], [], []
    for rec, ret in zip(traj.steps, returns):
        if rec.logprob_t is None or rec.value_t is None or rec.entropy_t is None:
            raise ValueError("trajectory step carries no gradient tensors")
        advantage = ret - float(rec.value_t.data)  # critic detached in the policy term
        policy_terms.append(ops.scale(rec.logprob_t, -advantage))
        value_terms.append(ops.square(ops.sub(Tensor(ret), rec.value_t)))
        entropy_terms.append(rec.entropy_t)
    policy_loss = ops.sum_tensors(policy_terms)
    value_loss = ops.sum_tensors(value_terms)
    entropy = ops.sum_tensors(entropy_terms)
    total = ops.add(ops.add(policy_loss, ops.scale(value_loss, value_coef)),
                    ops.scale(entropy, -entropy_coef))
    report = {
        "policy_loss": float(policy_loss.data),
        "value_loss": float(value_loss.data),
        "entropy": float(entropy.data),
        "total": float(total.data),
    }
    for key, val in report.items():
        if not np.isfinite(val):
            raise NumericsError(f"{key} is {val}; diagnostic dump: " + _dump(traj, returns))
    return total, report


def _dump(traj: Trajectory, returns: list[float]) -> str:
    lines = []
    for t, (rec, ret) in enumerate(zip(traj.steps, returns)):
        v = float(rec.value_t.data) if rec.value_t is not None else float("nan")
        p = rec.probs[rec.chosen] if rec.probs is not None else float("nan")
        lines.append(f"step {t}: action={rec.admissible[rec.chosen].text!r} "
                     f"p={p:.3e} V={v:.3e} r={rec.reward} R={ret:.3e}")
    return "\n".join(lines)


def a2c_update(trajectories: Trajectory | list[Trajectory], optimizer: Adam,
               gamma: float = 0.9, value_coef: float = 0.5,
               entropy_coef: float = 0.01) -> dict:
    """Fold one or more trajectories into a single optimizer step."""
    if isinstance(trajectories, Trajectory):
        trajectories = [trajectories]
    if not trajectories or all(not t.steps for t in trajectories):
        raise ValueError("a2c_update needs at least one non-empty trajectory")
    optimizer.zero_grad()
    combined = {"policy_loss": 0.0, "value_loss": 0.0, "entropy": 0.0, "total": 0.0}
    for traj in trajectories:
        if not traj.steps:
            continue
        if traj.tape is None:
            raise ValueError("trajectory was not recorded under a tape (eval rollout?)")
        with traj.tape:  # append loss ops to the episode's own tape
            total, report = _trajectory_loss(traj, gamma, value_coef, entropy_coef)
        traj.tape.backward(total)
        for key in combined:
            combined[key] += report[key]
    optimizer.step()
    return combined
