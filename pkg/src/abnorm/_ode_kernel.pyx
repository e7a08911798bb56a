# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled fixed-step RK4 kernel for 4x4 constant-coefficient linear systems."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def rk4_trajectory(object a_in, object psi0_in, double dt, int n_steps):
    """Classical RK4 for psi' = a @ psi; returns (n_steps + 1, 4) states."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = np.ascontiguousarray(a_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] p0 = np.ascontiguousarray(psi0_in, dtype=np.float64)
    if a.shape[0] != 4 or a.shape[1] != 4 or p0.shape[0] != 4:
        raise ValueError("kernel handles 4x4 systems only")
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n_steps + 1, 4))
    cdef double psi[4]
    cdef double k1[4]
    cdef double k2[4]
    cdef double k3[4]
    cdef double k4[4]
    cdef double tmp[4]
    cdef int n, i, j
    cdef double acc
    for i in range(4):
        psi[i] = p0[i]
        out[0, i] = psi[i]
    for n in range(n_steps):
        for i in range(4):
            acc = 0.0
            for j in range(4):
                acc += a[i, j] * psi[j]
            k1[i] = acc
        for i in range(4):
            tmp[i] = psi[i] + 0.5 * dt * k1[i]
        for i in range(4):
            acc = 0.0
            for j in range(4):
                acc += a[i, j] * tmp[j]
            k2[i] = acc
        for i in range(4):
            tmp[i] = psi[i] + 0.5 * dt * k2[i]
        for i in range(4):
            acc = 0.0
            for j in range(4):
                acc += a[i, j] * tmp[j]
            k3[i] = acc
        for i in range(4):
            tmp[i] = psi[i] + dt * k3[i]
        for i in range(4):
            acc = 0.0
            for j in range(4):
                acc += a[i, j] * tmp[j]
            k4[i] = acc
        for i in range(4):
            psi[i] = psi[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            out[n + 1, i] = psi[i]
    return out
