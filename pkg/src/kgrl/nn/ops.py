"""Differentiable primitive operations.

Shapes in play are small (vectors up to a few hundred entries, matrices up
to node_cap x hidden), so everything delegates to NumPy; the fused GRU
sequence op lives in :mod:`kgrl.nn.layers` on top of the kernel backends.
"""
from __future__ import annotations

import numpy as np

from .tensor import DTYPE, Tensor, record_op


def _unbroadcast(g: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Sum ``g`` down to ``shape`` (inverse of NumPy broadcasting)."""
    if g.shape == shape:
        return g
    extra = g.ndim - len(shape)
    if extra > 0:
        g = g.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, n in enumerate(shape) if n == 1 and g.shape[i] != 1)
    if axes:
        g = g.sum(axis=axes, keepdims=True)
    return g


def add(a: Tensor, b: Tensor) -> Tensor:
    out = Tensor(a.data + b.data)

    def backward(g):
        if a.requires_grad:
            a.accumulate_grad(_unbroadcast(g, a.data.shape))
        if b.requires_grad:
            b.accumulate_grad(_unbroadcast(g, b.data.shape))

    return record_op(out, (a, b), backward)


def sub(a: Tensor, b: Tensor) -> Tensor:
    out = Tensor(a.data - b.data)

    def backward(g):
        if a.requires_grad:
            a.accumulate_grad(_unbroadcast(g, a.data.shape))
        if b.requires_grad:
            b.accumulate_grad(-_unbroadcast(g, b.data.shape))

    return record_op(out, (a, b), backward)


def mul(a: Tensor, b: Tensor) -> Tensor:
    out = Tensor(a.data * b.data)

    def backward(g):
        if a.requires_grad:
            a.accumulate_grad(_unbroadcast(g * b.data, a.data.shape))
        if b.requires_grad:
            b.accumulate_grad(_unbroadcast(g * a.data, b.data.shape))

    return record_op(out, (a, b), backward)


def scale(a: Tensor, c: float) -> Tensor:
    out = Tensor(a.data * c)

    def backward(g):
        if a.requires_grad:
            a.accumulate_grad(g * c)

    return record_op(out, (a,), backward)


def neg(a: Tensor) -> Tensor:
    return scale(a, -1.0)


def matmul(a: Tensor, b: Tensor) -> Tensor:
    """Matrix/vector product for the 2D@2D, 2D@1D, and 1D@2D cases."""
    out = Tensor(a.data @ b.data)
    ad, bd = a.data, b.data

    def backward(g):
        if ad.ndim == 2 and bd.ndim == 2:
            if a.requires_grad:
                a.accumulate_grad(g @ bd.T)
            if b.requires_grad:
                b.accumulate_grad(ad.T @ g)
        elif ad.ndim == 2 and bd.ndim == 1:
            if a.requires_grad:
                a.accumulate_grad(np.outer(g, bd))
            if b.requires_grad:
                b.accumulate_grad(ad.T @ g)
        elif ad.ndim == 1 and bd.ndim == 2:
            if a.requires_grad:
                a.accumulate_grad(bd @ g)
            if b.requires_grad:
                b.accumulate_grad(np.outer(ad, g))
        else:
            raise ValueError(f"unsupported matmul shapes {ad.shape} @ {bd.shape}")

    return record_op(out, (a, b), backward)


def const_matmul(c: np.ndarray, x: Tensor) -> Tensor:
    """Product with a constant left matrix (adjacency, mention-average, ...)."""
    out = Tensor(c @ x.data)

    def backward(g):
        if x.requires_grad:
            x.accumulate_grad(c.T @ g)

    return record_op(out, (x,), backward)


def dot(a: Tensor, b: Tensor) -> Tensor:
    out = Tensor(a.data @ b.data)

    def backward(g):
        if a.requires_grad:
            a.accumulate_grad(g * b.data)
        if b.requires_grad:
            b.accumulate_grad(g * a.data)

    return record_op(out, (a, b), backward)


def relu(x: Tensor) -> Tensor:
    out = Tensor(np.maximum(x.data, 0.0))
    mask = x.data > 0

    def backward(g):
        if x.requires_grad:
            x.accumulate_grad(g * mask)

    return record_op(out, (x,), backward)


def tanh(x: Tensor) -> Tensor:
    out = Tensor(np.tanh(x.data))

    def backward(g):
        if x.requires_grad:
            x.accumulate_grad(g * (1.0 - out.data ** 2))

    return record_op(out, (x,), backward)


def sigmoid(x: Tensor) -> Tensor:
    out = Tensor(1.0 / (1.0 + np.exp(-x.data)))

    def backward(g):
        if x.requires_grad:
            x.accumulate_grad(g * out.data * (1.0 - out.data))

    return record_op(out, (x,), backward)


def softmax(x: Tensor) -> Tensor:
    """Stable softmax over a non-empty 1-D vector."""
    if x.data.ndim != 1 or x.data.size == 0:
        raise ValueError("softmax expects a non-empty 1-D vector")
    shifted = x.data - x.data.max()
    e = np.exp(shifted)
    p = e / e.sum()
    out = Tensor(p)

    def backward(g):
        if x.requires_grad:
            x.accumulate_grad(p * (g - (g @ p)))

    return record_op(out, (x,), backward)


def log_softmax(x: Tensor) -> Tensor:
    if x.data.ndim != 1 or x.data.size == 0:
        raise ValueError("log_softmax expects a non-empty 1-D vector")
    shifted = x.data - x.data.max()
    logz = np.log(np.exp(shifted).sum())
    out = Tensor(shifted - logz)
    p = np.exp(out.data)

    def backward(g):
        if x.requires_grad:
            x.accumulate_grad(g - p * g.sum())

    return record_op(out, (x,), backward)


def index(x: Tensor, i: int) -> Tensor:
    out = Tensor(x.data[i])

    def backward(g):
        if x.requires_grad:
            full = np.zeros_like(x.data)
            full[i] = g
            x.accumulate_grad(full)

    return record_op(out, (x,), backward)


def concat(parts: list[Tensor]) -> Tensor:
    out = Tensor(np.concatenate([p.data for p in parts]))
    sizes = [p.data.size for p in parts]

    def backward(g):
        offset = 0
        for p, n in zip(parts, sizes):
            if p.requires_grad:
                p.accumulate_grad(g[offset:offset + n])
            offset += n

    return record_op(out, tuple(parts), backward)


def hconcat(a: Tensor, b: Tensor) -> Tensor:
    """Concatenate two matrices along columns."""
    out = Tensor(np.concatenate([a.data, b.data], axis=1))
    na = a.data.shape[1]

    def backward(g):
        if a.requires_grad:
            a.accumulate_grad(g[:, :na])
        if b.requires_grad:
            b.accumulate_grad(g[:, na:])

    return record_op(out, (a, b), backward)


def tile_rows(v: Tensor, n: int) -> Tensor:
    """Repeat a vector as n identical matrix rows."""
    out = Tensor(np.tile(v.data, (n, 1)))

    def backward(g):
        if v.requires_grad:
            v.accumulate_grad(g.sum(axis=0))

    return record_op(out, (v,), backward)


def mean_rows(x: Tensor) -> Tensor:
    """Arithmetic mean over matrix rows (the graph mean-pool)."""
    if x.data.ndim != 2 or x.data.shape[0] == 0:
        raise ValueError("mean_rows expects a matrix with >= 1 row")
    n = x.data.shape[0]
    out = Tensor(x.data.mean(axis=0))

    def backward(g):
        if x.requires_grad:
            x.accumulate_grad(np.tile(g / n, (n, 1)))

    return record_op(out, (x,), backward)


def sum_tensors(parts: list[Tensor]) -> Tensor:
    """Sum same-shaped tensors (loss accumulation over steps)."""
    out = Tensor(sum(p.data for p in parts))

    def backward(g):
        for p in parts:
            if p.requires_grad:
                p.accumulate_grad(g)

    return record_op(out, tuple(parts), backward)


def square(x: Tensor) -> Tensor:
    out = Tensor(x.data ** 2)

    def backward(g):
        if x.requires_grad:
            x.accumulate_grad(2.0 * g * x.data)

    return record_op(out, (x,), backward)


def zeros(shape) -> Tensor:
    return Tensor(np.zeros(shape, dtype=DTYPE))
