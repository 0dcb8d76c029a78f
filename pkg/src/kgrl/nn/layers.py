"""Neural layers: linear, GRU cell/sequence, GCN layer, mean pool.

The GRU sequence is a single fused tape op backed by the kernel backend
(Cython when compiled, NumPy otherwise); everything else composes the
primitives in :mod:`kgrl.nn.ops`.
"""
from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from . import kernels, ops
from .tensor import DTYPE, Tensor, record_op


def xavier_uniform(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    if len(shape) == 1:
        return np.zeros(shape, dtype=DTYPE)
    fan_out, fan_in = shape[0], shape[1]
    a = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-a, a, size=shape).astype(DTYPE)


@dataclass
class GRUParams:
    """The nine learnable tensors of one GRU: W* (h,d), U* (h,h), b* (h,)."""
    wz: Tensor
    uz: Tensor
    bz: Tensor
    wr: Tensor
    ur: Tensor
    br: Tensor
    wh: Tensor
    uh: Tensor
    bh: Tensor

    def tensors(self) -> dict[str, Tensor]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @property
    def hidden_dim(self) -> int:
        return self.wz.data.shape[0]


def init_gru(rng: np.random.Generator, input_dim: int, hidden_dim: int) -> GRUParams:
    def w():
        return Tensor(xavier_uniform(rng, (hidden_dim, input_dim)), requires_grad=True)

    def u():
        return Tensor(xavier_uniform(rng, (hidden_dim, hidden_dim)), requires_grad=True)

    def b():
        return Tensor(np.zeros(hidden_dim), requires_grad=True)

    return GRUParams(wz=w(), uz=u(), bz=b(), wr=w(), ur=u(), br=b(), wh=w(), uh=u(), bh=b())


def linear(x: Tensor, w: Tensor, b: Tensor) -> Tensor:
    """y = Wx + b for W (m,n), x (n,), b (m,)."""
    if w.data.shape[1] != x.data.shape[0]:
        raise ValueError(f"linear shape mismatch: W {w.data.shape} @ x {x.data.shape}")
    return ops.add(ops.matmul(w, x), b)


def gru_sequence(x: Tensor, lengths: np.ndarray, h0: Tensor, p: GRUParams) -> Tensor:
    """Fused GRU over a padded batch: x (B,T,d), h0 (B,h) -> (B,h)."""
    lengths = np.ascontiguousarray(lengths, dtype=np.int64)
    args = (np.ascontiguousarray(x.data), lengths, np.ascontiguousarray(h0.data),
            p.wz.data, p.wr.data, p.wh.data, p.uz.data, p.ur.data, p.uh.data,
            p.bz.data, p.br.data, p.bh.data)
    h_out, hs, zs, rs, cs = kernels.gru_forward(*args)
    out = Tensor(h_out)

    def backward(g):
        dx, dh0, dwz, dwr, dwh, duz, dur, duh, dbz, dbr, dbh = kernels.gru_backward(
            args[0], lengths, hs, zs, rs, cs,
            p.wz.data, p.wr.data, p.wh.data, p.uz.data, p.ur.data, p.uh.data,
            np.ascontiguousarray(g), x.requires_grad)
        if x.requires_grad:
            x.accumulate_grad(dx)
        if h0.requires_grad:
            h0.accumulate_grad(dh0)
        for t, d in ((p.wz, dwz), (p.wr, dwr), (p.wh, dwh),
                     (p.uz, duz), (p.ur, dur), (p.uh, duh),
                     (p.bz, dbz), (p.br, dbr), (p.bh, dbh)):
            if t.requires_grad:
                t.accumulate_grad(d)

    return record_op(out, (x, h0) + tuple(p.tensors().values()), backward)


def gru_cell(h_prev: Tensor, x: Tensor, p: GRUParams) -> Tensor:
    """One GRU step on vectors: h_prev (h,), x (d,) -> (h,)."""
    h = p.hidden_dim
    if h_prev.data.shape != (h,):
        raise ValueError(f"h_prev shape {h_prev.data.shape} != ({h},)")
    if x.data.shape != (p.wz.data.shape[1],):
        raise ValueError(f"x shape {x.data.shape} != ({p.wz.data.shape[1]},)")
    xb = _reshape(x, (1, 1, x.data.shape[0]))
    hb = _reshape(h_prev, (1, h))
    out = gru_sequence(xb, np.array([1], dtype=np.int64), hb, p)
    return _reshape(out, (h,))


def _reshape(t: Tensor, shape: tuple[int, ...]) -> Tensor:
    out = Tensor(t.data.reshape(shape))

    def backward(g):
        if t.requires_grad:
            t.accumulate_grad(g.reshape(t.data.shape))

    return record_op(out, (t,), backward)


def encode_token_matrix(x: np.ndarray, p: GRUParams) -> Tensor:
    """Final hidden state of the GRU over one constant token-embedding matrix (T,d)."""
    t_len = x.shape[0]
    xb = Tensor(x.reshape(1, t_len, x.shape[1]))
    h0 = Tensor(np.zeros((1, p.hidden_dim)))
    out = gru_sequence(xb, np.array([t_len], dtype=np.int64), h0, p)
    return _reshape(out, (p.hidden_dim,))


def encode_token_batch(xpad: np.ndarray, lengths: np.ndarray, p: GRUParams) -> Tensor:
    """Batch of constant token sequences, padded to (B,Tmax,d) -> (B,h)."""
    b = xpad.shape[0]
    h0 = Tensor(np.zeros((b, p.hidden_dim)))
    return gru_sequence(Tensor(xpad), lengths, h0, p)


def gcn_propagation_matrix(adjacency: np.ndarray) -> np.ndarray:
    """Symmetric-normalized propagation D^-1/2 (A + I) D^-1/2.

    ``adjacency`` is the 0/1 undirected matrix without self-loops.
    """
    a_hat = adjacency + np.eye(adjacency.shape[0])
    d_inv_sqrt = 1.0 / np.sqrt(a_hat.sum(axis=1))
    return a_hat * d_inv_sqrt[:, None] * d_inv_sqrt[None, :]


def gcn_layer(z: Tensor, prop: np.ndarray, w: Tensor) -> Tensor:
    """One graph-convolution step: ReLU(prop @ Z @ W).

    ``prop`` is the constant propagation matrix from
    :func:`gcn_propagation_matrix`; rows of Z follow graph node order.
    """
    if z.data.shape[0] != prop.shape[0]:
        raise ValueError(f"feature rows {z.data.shape[0]} != |V| {prop.shape[0]}")
    return ops.relu(ops.matmul(ops.const_matmul(prop, z), w))


def mean_pool(z: Tensor) -> Tensor:
    """Graph read-out: arithmetic mean of node rows."""
    return ops.mean_rows(z)
