"""Dense fp64 tensors with reverse-mode autodiff over an explicit tape.

Operations record a backward closure on the active tape (if any input
requires gradients); Tape.backward replays the closures in exact reverse
execution order, which is a valid topological order by construction.  A
tape is consumed by a single backward pass.  No operation mutates its
inputs.
"""
from __future__ import annotations

import contextlib

import numpy as np

DTYPE = np.float64


class Tensor:
    __slots__ = ("data", "requires_grad", "grad")

    def __init__(self, data, requires_grad: bool = False):
        self.data = np.asarray(data, dtype=DTYPE)
        self.requires_grad = requires_grad
        self.grad: np.ndarray | None = None

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    def item(self) -> float:
        return float(self.data)

    def detach(self) -> "Tensor":
        return Tensor(self.data.copy())

    def zero_grad(self) -> None:
        self.grad = None

    def accumulate_grad(self, g: np.ndarray) -> None:
        if self.grad is None:
            self.grad = np.array(g, dtype=DTYPE, copy=True)
        else:
            self.grad += g

    def __repr__(self) -> str:
        return f"Tensor(shape={self.data.shape}, requires_grad={self.requires_grad})"


_ACTIVE_TAPE: "Tape | None" = None


class Tape:
    """Execution-ordered record of backward closures for one episode/evaluation."""

    def __init__(self):
        self._nodes: list = []
        self._consumed = False

    def __enter__(self) -> "Tape":
        global _ACTIVE_TAPE
        if _ACTIVE_TAPE is not None:
            raise RuntimeError("a tape is already active")
        _ACTIVE_TAPE = self
        return self

    def __exit__(self, *exc) -> None:
        global _ACTIVE_TAPE
        _ACTIVE_TAPE = None

    def record(self, backward_fn) -> None:
        self._nodes.append(backward_fn)

    def __len__(self) -> int:
        return len(self._nodes)

    def backward(self, loss: Tensor) -> None:
        """Seed d(loss)/d(loss)=1 and propagate to every recorded input."""
        if self._consumed:
            raise RuntimeError("tape already consumed by a backward pass")
        if loss.data.shape != ():
            raise ValueError("backward requires a scalar loss")
        self._consumed = True
        loss.grad = np.ones((), dtype=DTYPE)
        for fn in reversed(self._nodes):
            fn()


def active_tape() -> Tape | None:
    return _ACTIVE_TAPE


@contextlib.contextmanager
def no_grad():
    """Temporarily deactivate the tape (pure forward evaluation)."""
    global _ACTIVE_TAPE
    saved, _ACTIVE_TAPE = _ACTIVE_TAPE, None
    try:
        yield
    finally:
        _ACTIVE_TAPE = saved


def record_op(out: Tensor, inputs: tuple[Tensor, ...], backward_fn) -> Tensor:
    """Mark ``out`` differentiable and record ``backward_fn`` if a tape is active."""
    tape = _ACTIVE_TAPE
    if tape is not None and any(t.requires_grad for t in inputs):
        out.requires_grad = True

        def guarded():
            if out.grad is not None:  # branch may be dead wrt the loss
                backward_fn(out.grad)

        tape.record(guarded)
    return out


def as_tensor(x) -> Tensor:
    return x if isinstance(x, Tensor) else Tensor(x)
