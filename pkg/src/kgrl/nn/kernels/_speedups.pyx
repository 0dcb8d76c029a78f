# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Cython implementation of the fused GRU sequence kernels.

Same contract as kernels.pyref: padded batches with per-sequence lengths;
steps at or past a sequence's length store zero gates and pass the hidden
state through unchanged in both directions.  Matrix products go through
BLAS dgemm (row-major wrappers below); gate math is elementwise C.
"""
import numpy as np

from scipy.linalg.cython_blas cimport dgemm
from libc.math cimport exp, tanh

BACKEND = "cython"


cdef inline double _sigmoid(double v) noexcept nogil:
    return 1.0 / (1.0 + exp(-v))


# Row-major GEMM wrappers (dgemm itself is column-major; operands swapped).

cdef inline void mm_abt(double* a, double* b, double* c,
                        int m, int n, int k, double beta) noexcept nogil:
    # C(m,n) = A(m,k) @ B(n,k)^T + beta*C
    cdef double alpha = 1.0
    if m == 0 or n == 0 or k == 0:
        return
    dgemm("T", "N", &n, &m, &k, &alpha, b, &k, a, &k, &beta, c, &n)


cdef inline void mm_ab(double* a, double* b, double* c,
                       int m, int n, int k, double beta) noexcept nogil:
    # C(m,n) = A(m,k) @ B(k,n) + beta*C
    cdef double alpha = 1.0
    if m == 0 or n == 0 or k == 0:
        return
    dgemm("N", "N", &n, &m, &k, &alpha, b, &n, a, &k, &beta, c, &n)


cdef inline void mm_ab_ld(double* a, double* b, double* c,
                          int m, int n, int k, double beta,
                          int lda, int ldc) noexcept nogil:
    # As mm_ab, but A rows are lda doubles apart (strided time slice of a
    # (B,T,h) buffer) and C rows ldc apart.
    cdef double alpha = 1.0
    if m == 0 or n == 0 or k == 0:
        return
    dgemm("N", "N", &n, &m, &k, &alpha, b, &n, a, &lda, &beta, c, &ldc)


cdef inline void mm_atb(double* a, double* b, double* c,
                        int m, int n, int k, double beta) noexcept nogil:
    # C(m,n) = A(k,m)^T @ B(k,n) + beta*C
    cdef double alpha = 1.0
    if m == 0 or n == 0 or k == 0:
        return
    dgemm("N", "T", &n, &m, &k, &alpha, b, &n, a, &m, &beta, c, &n)


def gru_forward(double[:, :, ::1] x, long long[::1] lengths, double[:, ::1] h0,
                double[:, ::1] wz, double[:, ::1] wr, double[:, ::1] wh,
                double[:, ::1] uz, double[:, ::1] ur, double[:, ::1] uh,
                double[::1] bz, double[::1] br, double[::1] bh):
    cdef int b_sz = x.shape[0]
    cdef int t_max = x.shape[1]
    cdef int d = x.shape[2]
    cdef int h = h0.shape[1]
    cdef int bt = b_sz * t_max

    hs_arr = np.zeros((b_sz, t_max + 1, h))
    zs_arr = np.zeros((b_sz, t_max, h))
    rs_arr = np.zeros((b_sz, t_max, h))
    cs_arr = np.zeros((b_sz, t_max, h))
    out_arr = np.zeros((b_sz, h))
    xz_arr = np.zeros((b_sz, t_max, h))
    xr_arr = np.zeros((b_sz, t_max, h))
    xh_arr = np.zeros((b_sz, t_max, h))
    hp_arr = np.zeros((b_sz, h))   # gathered h_{t-1}
    az_arr = np.zeros((b_sz, h))
    ar_arr = np.zeros((b_sz, h))
    ah_arr = np.zeros((b_sz, h))
    rh_arr = np.zeros((b_sz, h))

    cdef double[:, :, ::1] hs = hs_arr
    cdef double[:, :, ::1] zs = zs_arr
    cdef double[:, :, ::1] rs = rs_arr
    cdef double[:, :, ::1] cs = cs_arr
    cdef double[:, ::1] out = out_arr
    cdef double[:, :, ::1] xz = xz_arr
    cdef double[:, :, ::1] xr = xr_arr
    cdef double[:, :, ::1] xh = xh_arr
    cdef double[:, ::1] hp = hp_arr
    cdef double[:, ::1] az = az_arr
    cdef double[:, ::1] ar = ar_arr
    cdef double[:, ::1] ah = ah_arr
    cdef double[:, ::1] rh = rh_arr

    cdef Py_ssize_t b, t, i
    cdef double z, r, c

    with nogil:
        # input projections for the whole padded batch in three GEMMs
        mm_abt(&x[0, 0, 0], &wz[0, 0], &xz[0, 0, 0], bt, h, d, 0.0)
        mm_abt(&x[0, 0, 0], &wr[0, 0], &xr[0, 0, 0], bt, h, d, 0.0)
        mm_abt(&x[0, 0, 0], &wh[0, 0], &xh[0, 0, 0], bt, h, d, 0.0)

        for b in range(b_sz):
            for i in range(h):
                hs[b, 0, i] = h0[b, i]

        for t in range(t_max):
            for b in range(b_sz):
                for i in range(h):
                    hp[b, i] = hs[b, t, i]
            mm_abt(&hp[0, 0], &uz[0, 0], &az[0, 0], b_sz, h, h, 0.0)
            mm_abt(&hp[0, 0], &ur[0, 0], &ar[0, 0], b_sz, h, h, 0.0)
            for b in range(b_sz):
                if t >= lengths[b]:
                    for i in range(h):
                        rh[b, i] = 0.0
                        hs[b, t + 1, i] = hs[b, t, i]
                    continue
                for i in range(h):
                    z = _sigmoid(az[b, i] + xz[b, t, i] + bz[i])
                    r = _sigmoid(ar[b, i] + xr[b, t, i] + br[i])
                    zs[b, t, i] = z
                    rs[b, t, i] = r
                    rh[b, i] = r * hs[b, t, i]
            mm_abt(&rh[0, 0], &uh[0, 0], &ah[0, 0], b_sz, h, h, 0.0)
            for b in range(b_sz):
                if t >= lengths[b]:
                    continue
                for i in range(h):
                    c = tanh(ah[b, i] + xh[b, t, i] + bh[i])
                    cs[b, t, i] = c
                    z = zs[b, t, i]
                    hs[b, t + 1, i] = (1.0 - z) * hs[b, t, i] + z * c

        for b in range(b_sz):
            for i in range(h):
                out[b, i] = hs[b, lengths[b], i]
    return out_arr, hs_arr, zs_arr, rs_arr, cs_arr


def gru_backward(double[:, :, ::1] x, long long[::1] lengths,
                 double[:, :, ::1] hs, double[:, :, ::1] zs,
                 double[:, :, ::1] rs, double[:, :, ::1] cs,
                 double[:, ::1] wz, double[:, ::1] wr, double[:, ::1] wh,
                 double[:, ::1] uz, double[:, ::1] ur, double[:, ::1] uh,
                 double[:, ::1] d_out, bint need_dx=True):
    cdef int b_sz = x.shape[0]
    cdef int t_max = x.shape[1]
    cdef int d = x.shape[2]
    cdef int h = d_out.shape[1]
    cdef int bt = b_sz * t_max

    dx_arr = np.zeros((b_sz, t_max, d)) if need_dx else None
    dh0_arr = np.zeros((b_sz, h))
    dwz_arr = np.zeros((h, d)); dwr_arr = np.zeros((h, d)); dwh_arr = np.zeros((h, d))
    duz_arr = np.zeros((h, h)); dur_arr = np.zeros((h, h)); duh_arr = np.zeros((h, h))
    dbz_arr = np.zeros(h); dbr_arr = np.zeros(h); dbh_arr = np.zeros(h)

    daz_arr = np.zeros((b_sz, t_max, h))
    dar_arr = np.zeros((b_sz, t_max, h))
    dac_arr = np.zeros((b_sz, t_max, h))
    hprev_arr = np.zeros((b_sz, t_max, h))
    rh_arr = np.zeros((b_sz, t_max, h))
    dh_arr = d_out.copy()
    ds_arr = np.zeros((b_sz, h))
    dhp_arr = np.zeros((b_sz, h))

    cdef double[:, :, ::1] daz = daz_arr
    cdef double[:, :, ::1] dar = dar_arr
    cdef double[:, :, ::1] dac = dac_arr
    cdef double[:, :, ::1] hprev = hprev_arr
    cdef double[:, :, ::1] rhf = rh_arr
    cdef double[:, ::1] dh = dh_arr
    cdef double[:, ::1] ds = ds_arr
    cdef double[:, ::1] dhp = dhp_arr
    cdef double[:, ::1] dh0 = dh0_arr
    cdef double[:, ::1] dwz = dwz_arr
    cdef double[:, ::1] dwr = dwr_arr
    cdef double[:, ::1] dwh = dwh_arr
    cdef double[:, ::1] duz = duz_arr
    cdef double[:, ::1] dur = dur_arr
    cdef double[:, ::1] duh = duh_arr
    cdef double[::1] dbz = dbz_arr
    cdef double[::1] dbr = dbr_arr
    cdef double[::1] dbh = dbh_arr
    cdef double[:, :, ::1] dx
    if need_dx:
        dx = dx_arr

    cdef Py_ssize_t b, t, i
    cdef double z, r, c, hpv, dzv, dcv, drv

    with nogil:
        for t in range(t_max - 1, -1, -1):
            for b in range(b_sz):
                if t >= lengths[b]:
                    for i in range(h):
                        dhp[b, i] = dh[b, i]
                    continue
                for i in range(h):
                    z = zs[b, t, i]
                    c = cs[b, t, i]
                    hpv = hs[b, t, i]
                    hprev[b, t, i] = hpv
                    dzv = dh[b, i] * (c - hpv)
                    dcv = dh[b, i] * z
                    dhp[b, i] = dh[b, i] * (1.0 - z)
                    daz[b, t, i] = dzv * z * (1.0 - z)
                    dac[b, t, i] = dcv * (1.0 - c * c)
            # ds = dac_t @ Uh  (time slice rows are t_max*h apart)
            mm_ab_ld(&dac[0, t, 0], &uh[0, 0], &ds[0, 0], b_sz, h, h, 0.0, t_max * h, h)
            for b in range(b_sz):
                if t >= lengths[b]:
                    continue
                for i in range(h):
                    r = rs[b, t, i]
                    hpv = hs[b, t, i]
                    drv = ds[b, i] * hpv
                    dhp[b, i] += ds[b, i] * r
                    dar[b, t, i] = drv * r * (1.0 - r)
                    rhf[b, t, i] = r * hpv
            # dh = dhp + daz_t @ Uz + dar_t @ Ur
            for b in range(b_sz):
                for i in range(h):
                    dh[b, i] = dhp[b, i]
            mm_ab_ld(&daz[0, t, 0], &uz[0, 0], &dh[0, 0], b_sz, h, h, 1.0, t_max * h, h)
            mm_ab_ld(&dar[0, t, 0], &ur[0, 0], &dh[0, 0], b_sz, h, h, 1.0, t_max * h, h)

        # weight gradients as flat reductions over (B*T) rows
        mm_atb(&daz[0, 0, 0], &x[0, 0, 0], &dwz[0, 0], h, d, bt, 0.0)
        mm_atb(&dar[0, 0, 0], &x[0, 0, 0], &dwr[0, 0], h, d, bt, 0.0)
        mm_atb(&dac[0, 0, 0], &x[0, 0, 0], &dwh[0, 0], h, d, bt, 0.0)
        mm_atb(&daz[0, 0, 0], &hprev[0, 0, 0], &duz[0, 0], h, h, bt, 0.0)
        mm_atb(&dar[0, 0, 0], &hprev[0, 0, 0], &dur[0, 0], h, h, bt, 0.0)
        mm_atb(&dac[0, 0, 0], &rhf[0, 0, 0], &duh[0, 0], h, h, bt, 0.0)
        for b in range(b_sz):
            for t in range(t_max):
                for i in range(h):
                    dbz[i] += daz[b, t, i]
                    dbr[i] += dar[b, t, i]
                    dbh[i] += dac[b, t, i]
        if need_dx:
            mm_ab(&daz[0, 0, 0], &wz[0, 0], &dx[0, 0, 0], bt, d, h, 0.0)
            mm_ab(&dar[0, 0, 0], &wr[0, 0], &dx[0, 0, 0], bt, d, h, 1.0)
            mm_ab(&dac[0, 0, 0], &wh[0, 0], &dx[0, 0, 0], bt, d, h, 1.0)
        for b in range(b_sz):
            for i in range(h):
                dh0[b, i] = dh[b, i]

    return (dx_arr, dh0_arr, dwz_arr, dwr_arr, dwh_arr,
            duz_arr, dur_arr, duh_arr, dbz_arr, dbr_arr, dbh_arr)
