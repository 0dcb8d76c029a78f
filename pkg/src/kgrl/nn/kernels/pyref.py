"""Pure-NumPy reference implementation of the fused GRU sequence kernels.

Semantics of the padded batch: sequence b runs for lengths[b] steps; beyond
that the hidden state carries through unchanged.  Masked steps store zero
gates, which makes them exact pass-throughs in the backward recurrence as
well (z = 0 forces h' = h_prev and kills every parameter contribution).
"""
from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-x))


def gru_forward(x, lengths, h0, wz, wr, wh, uz, ur, uh, bz, br, bh):
    """Run a GRU over a padded batch.

    x: (B, T, d), lengths: (B,), h0: (B, h); weights W*: (h, d), U*: (h, h),
    biases b*: (h,).  Returns (h_out (B, h), H (B, T+1, h), Z, R, C (B, T, h)).
    """
    b_sz, t_max, _ = x.shape
    h_dim = h0.shape[1]
    hs = np.zeros((b_sz, t_max + 1, h_dim))
    zs = np.zeros((b_sz, t_max, h_dim))
    rs = np.zeros((b_sz, t_max, h_dim))
    cs = np.zeros((b_sz, t_max, h_dim))
    hs[:, 0] = h0
    # input contributions for the whole batch in three matmuls
    xz = x @ wz.T + bz
    xr = x @ wr.T + br
    xh = x @ wh.T + bh
    for t in range(t_max):
        h_prev = hs[:, t]
        active = (t < lengths)[:, None]
        z = _sigmoid(xz[:, t] + h_prev @ uz.T) * active
        r = _sigmoid(xr[:, t] + h_prev @ ur.T) * active
        c = np.tanh(xh[:, t] + (r * h_prev) @ uh.T) * active
        zs[:, t], rs[:, t], cs[:, t] = z, r, c
        hs[:, t + 1] = (1.0 - z) * h_prev + z * c
    h_out = hs[np.arange(b_sz), lengths]
    return h_out, hs, zs, rs, cs


def gru_backward(x, lengths, hs, zs, rs, cs, wz, wr, wh, uz, ur, uh, d_out,
                 need_dx: bool = True):
    """Backpropagate d_out (B, h) through the recorded forward pass.

    Returns (dx, dh0, dwz, dwr, dwh, duz, dur, duh, dbz, dbr, dbh); dx is
    None when need_dx is False.
    """
    b_sz, t_max, _ = x.shape
    dx = np.zeros_like(x) if need_dx else None
    dwz, dwr, dwh = np.zeros_like(wz), np.zeros_like(wr), np.zeros_like(wh)
    duz, dur, duh = np.zeros_like(uz), np.zeros_like(ur), np.zeros_like(uh)
    dbz = np.zeros(wz.shape[0])
    dbr = np.zeros(wr.shape[0])
    dbh = np.zeros(wh.shape[0])
    dh = d_out.copy()
    for t in range(t_max - 1, -1, -1):
        z, r, c = zs[:, t], rs[:, t], cs[:, t]
        h_prev = hs[:, t]
        dz = dh * (c - h_prev)
        dc = dh * z
        dh_prev = dh * (1.0 - z)
        daz = dz * z * (1.0 - z)
        dac = dc * (1.0 - c * c)
        ds = dac @ uh  # gradient on r*h_prev
        dr = ds * h_prev
        dh_prev += ds * r
        dar = dr * r * (1.0 - r)

        xt = x[:, t]
        dwz += daz.T @ xt
        dwr += dar.T @ xt
        dwh += dac.T @ xt
        duz += daz.T @ h_prev
        dur += dar.T @ h_prev
        duh += dac.T @ (r * h_prev)
        dbz += daz.sum(axis=0)
        dbr += dar.sum(axis=0)
        dbh += dac.sum(axis=0)
        if need_dx:
            dx[:, t] = daz @ wz + dar @ wr + dac @ wh
        dh = dh_prev + daz @ uz + dar @ ur
    return dx, dh, dwz, dwr, dwh, duz, dur, duh, dbz, dbr, dbh
