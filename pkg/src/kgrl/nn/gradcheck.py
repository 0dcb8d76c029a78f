"""Central finite-difference checking of tape gradients."""
from __future__ import annotations

import numpy as np

from .tensor import Tape, Tensor

# Relative error uses a denominator floor so near-zero gradients are judged
# absolutely; finite-difference noise at h=1e-5 sits around 1e-10.
DENOM_FLOOR = 1e-2


def finite_difference_check(f, params: dict[str, Tensor], h: float = 1e-5,
                            tolerance: float = 1e-5) -> dict:
    """Compare tape gradients of the scalar ``f()`` against central differences.

    ``f`` must be a pure forward function of ``params`` (it is re-evaluated
    many times with perturbed entries).  Returns a report dict with the max
    relative error per parameter, the overall max, and a pass flag.
    """
    for p in params.values():
        p.grad = None
    with Tape() as tape:
        loss = f()
    tape.backward(loss)
    analytic = {name: (np.zeros_like(p.data) if p.grad is None else p.grad.copy())
                for name, p in params.items()}

    per_param: dict[str, float] = {}
    for name, p in params.items():
        flat = p.data.ravel()
        num = np.zeros(flat.size)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + h
            f_plus = float(f().data)
            flat[i] = orig - h
            f_minus = float(f().data)
            flat[i] = orig
            num[i] = (f_plus - f_minus) / (2.0 * h)
        a = analytic[name].ravel()
        denom = np.maximum(DENOM_FLOOR, np.maximum(np.abs(a), np.abs(num)))
        per_param[name] = float(np.max(np.abs(a - num) / denom)) if flat.size else 0.0

    max_err = max(per_param.values()) if per_param else 0.0
    return {
        "per_param": per_param,
        "max_rel_err": max_err,
        "tolerance": tolerance,
        "passed": max_err < tolerance,
    }
