# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner kernels; same contract as :mod:`bciphs._kernels_py`.

The arithmetic mirrors the NumPy reference operation by operation (including
using true division by ``2*dz`` rather than multiplying by a reciprocal), so
the two backends agree to rounding error.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef void _diff_rows(const double[:, ::1] f, double dz, double[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t rows = f.shape[0]
    cdef Py_ssize_t N = f.shape[1]
    cdef Py_ssize_t i, j
    cdef double two_dz = 2.0 * dz
    for i in range(rows):
        out[i, 0] = (f[i, 1] - f[i, 0]) / dz
        for j in range(1, N - 1):
            out[i, j] = (f[i, j + 1] - f[i, j - 1]) / two_dz
        out[i, N - 1] = (f[i, N - 1] - f[i, N - 2]) / dz


cdef void _diff_vec(const double[::1] f, double dz, double[::1] out) noexcept nogil:
    cdef Py_ssize_t N = f.shape[0]
    cdef Py_ssize_t j
    cdef double two_dz = 2.0 * dz
    out[0] = (f[1] - f[0]) / dz
    for j in range(1, N - 1):
        out[j] = (f[j + 1] - f[j - 1]) / two_dz
    out[N - 1] = (f[N - 1] - f[N - 2]) / dz


def diff_first(f, double dz, out=None):
    """First spatial derivative along the last axis (see the NumPy twin).

    This entry point is for external callers working on whole arrays; the
    compiled step kernels below use the typed row/vector routines directly.
    """
    arr = np.asarray(f, dtype=np.float64)
    if out is None:
        out = np.empty_like(arr)
    out[..., 1:-1] = (arr[..., 2:] - arr[..., :-2]) / (2.0 * dz)
    out[..., 0] = (arr[..., 1] - arr[..., 0]) / dz
    out[..., -1] = (arr[..., -1] - arr[..., -2]) / dz
    return out


def forces_and_fluxes(dHdx, dHds, gam0, gam1, gams, P0, P1, G0, G1, double gs, double dz, double sign1):
    """Driving forces, modulated rates, and transported fluxes (see the twin)."""
    cdef const double[:, ::1] ux = np.ascontiguousarray(dHdx, dtype=np.float64)
    cdef const double[::1] us = np.ascontiguousarray(dHds, dtype=np.float64)
    cdef const double[:, ::1] g0 = np.ascontiguousarray(gam0, dtype=np.float64).reshape(-1, us.shape[0])
    cdef const double[:, ::1] g1 = np.ascontiguousarray(gam1, dtype=np.float64).reshape(-1, us.shape[0])
    cdef const double[::1] gss = np.ascontiguousarray(gams, dtype=np.float64)
    cdef const double[:, ::1] p1 = np.ascontiguousarray(P1, dtype=np.float64)
    cdef const double[:, ::1] cg0 = np.ascontiguousarray(G0, dtype=np.float64)
    cdef const double[:, ::1] cg1 = np.ascontiguousarray(G1, dtype=np.float64)

    cdef Py_ssize_t n = ux.shape[0]
    cdef Py_ssize_t N = ux.shape[1]
    cdef Py_ssize_t m = cg0.shape[1]
    cdef Py_ssize_t a, c, i, j

    Du_arr = np.empty((n, N))
    b0_arr = np.empty((m, N))
    d1_arr = np.empty((m, N))
    b1_arr = np.empty((m, N))
    R0_arr = np.empty((m, N))
    R1_arr = np.empty((m, N))
    bs_arr = np.empty(N)
    rs_arr = np.empty(N)
    Fx_arr = np.empty((n, N))
    w_arr = np.empty(N)

    cdef double[:, ::1] Du = Du_arr
    cdef double[:, ::1] b0 = b0_arr
    cdef double[:, ::1] d1 = d1_arr
    cdef double[:, ::1] b1 = b1_arr
    cdef double[:, ::1] R0 = R0_arr
    cdef double[:, ::1] R1 = R1_arr
    cdef double[::1] bs = bs_arr
    cdef double[::1] rs = rs_arr
    cdef double[:, ::1] Fx = Fx_arr
    cdef double[::1] w = w_arr
    cdef double acc, acc2

    with nogil:
        if n:
            _diff_rows(ux, dz, Du)
        _diff_vec(us, dz, bs)
        for i in range(m):
            for j in range(N):
                acc = 0.0
                acc2 = 0.0
                for a in range(n):
                    acc += cg0[a, i] * ux[a, j]
                    acc2 += cg1[a, i] * Du[a, j]
                b0[i, j] = -acc
                d1[i, j] = acc2
                b1[i, j] = sign1 * acc2
                R0[i, j] = g0[i, j] * b0[i, j]
                R1[i, j] = g1[i, j] * b1[i, j]
        for j in range(N):
            rs[j] = gss[j] * bs[j]
            w[j] = (gs * rs[j]) * us[j]
        for a in range(n):
            for j in range(N):
                acc = 0.0
                for c in range(n):
                    acc += p1[a, c] * ux[c, j]
                if m:
                    acc2 = 0.0
                    for i in range(m):
                        acc2 += cg1[a, i] * (R1[i, j] * us[j])
                    acc = acc + acc2
                Fx[a, j] = acc

    return b0_arr, R0_arr, d1_arr, b1_arr, R1_arr, bs_arr, rs_arr, Fx_arr, w_arr


def assemble_rates(dHdx, dHds, R0, b0, R1, d1, rs, bs, Fx, w, P0, G0, double gs, double dz):
    """Combine forces and fluxes into time derivatives (see the NumPy twin)."""
    cdef const double[:, ::1] ux = np.ascontiguousarray(dHdx, dtype=np.float64)
    cdef const double[::1] us = np.ascontiguousarray(dHds, dtype=np.float64)
    cdef const double[:, ::1] r0 = np.ascontiguousarray(R0, dtype=np.float64).reshape(-1, us.shape[0])
    cdef const double[:, ::1] f0 = np.ascontiguousarray(b0, dtype=np.float64).reshape(-1, us.shape[0])
    cdef const double[:, ::1] r1 = np.ascontiguousarray(R1, dtype=np.float64).reshape(-1, us.shape[0])
    cdef const double[:, ::1] f1 = np.ascontiguousarray(d1, dtype=np.float64).reshape(-1, us.shape[0])
    cdef const double[::1] crs = np.ascontiguousarray(rs, dtype=np.float64)
    cdef const double[::1] cbs = np.ascontiguousarray(bs, dtype=np.float64)
    cdef const double[:, ::1] cfx = np.ascontiguousarray(Fx, dtype=np.float64)
    cdef const double[::1] cw = np.ascontiguousarray(w, dtype=np.float64)
    cdef const double[:, ::1] p0 = np.ascontiguousarray(P0, dtype=np.float64)
    cdef const double[:, ::1] cg0 = np.ascontiguousarray(G0, dtype=np.float64)

    cdef Py_ssize_t n = ux.shape[0]
    cdef Py_ssize_t N = ux.shape[1]
    cdef Py_ssize_t m = r0.shape[0]
    cdef Py_ssize_t a, c, i, j

    dw_arr = np.empty(N)
    dFx_arr = np.empty((n, N))
    dxdt_arr = np.empty((n, N))
    dsdt_arr = np.empty(N)

    cdef double[::1] dw = dw_arr
    cdef double[:, ::1] dFx = dFx_arr
    cdef double[:, ::1] dxdt = dxdt_arr
    cdef double[::1] dsdt = dsdt_arr
    cdef double acc, sum0, sum1

    with nogil:
        _diff_vec(cw, dz, dw)
        if n:
            _diff_rows(cfx, dz, dFx)
        for a in range(n):
            for j in range(N):
                acc = 0.0
                for c in range(n):
                    acc += p0[a, c] * ux[c, j]
                acc = acc + dFx[a, j]
                if m:
                    sum0 = 0.0
                    for i in range(m):
                        sum0 += cg0[a, i] * (r0[i, j] * us[j])
                    acc = acc + sum0
                dxdt[a, j] = acc
        for j in range(N):
            acc = (gs * crs[j]) * cbs[j] + dw[j]
            if m:
                sum0 = 0.0
                sum1 = 0.0
                for i in range(m):
                    sum0 += r0[i, j] * f0[i, j]
                for i in range(m):
                    sum1 += r1[i, j] * f1[i, j]
                acc = acc + (sum0 + sum1)
            dsdt[j] = acc

    return dxdt_arr, dsdt_arr
