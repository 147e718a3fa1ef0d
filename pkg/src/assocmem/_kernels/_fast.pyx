# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled recall kernels; same contracts as assocmem._kernels._slow."""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def sign_iterate(const double[:, ::1] weights, const double[::1] q0, int max_iters,
                 double tol, double tie_eps=1e-12):
    cdef Py_ssize_t n = q0.shape[0]
    cdef cnp.ndarray[double, ndim=1] q_arr = np.array(q0, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] h_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] q = q_arr
    cdef double[::1] h = h_arr
    cdef Py_ssize_t i, j, iteration
    cdef double acc, s, nrm, moved, diff, prev

    for iteration in range(1, max_iters + 1):
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += weights[i, j] * q[j]
            h[i] = acc
        nrm = 0.0
        for i in range(n):
            if h[i] > tie_eps:
                s = 1.0
            elif h[i] < -tie_eps:
                s = -1.0
            elif q[i] > 0.0:
                s = 1.0
            elif q[i] < 0.0:
                s = -1.0
            else:
                s = 0.0
            h[i] = s
            nrm += s * s
        nrm = sqrt(nrm)
        moved = 0.0
        for i in range(n):
            prev = q[i]
            q[i] = h[i] / nrm if nrm > 0.0 else h[i]
            diff = q[i] - prev
            moved += diff * diff
        if sqrt(moved) < tol:
            return q_arr, iteration, True
    return q_arr, max_iters, False


def async_sign_descent(const double[:, ::1] weights, const double[::1] q0,
                       const long long[::1] site_order, double tie_eps=1e-12):
    cdef Py_ssize_t n = q0.shape[0]
    cdef Py_ssize_t steps = site_order.shape[0]
    cdef cnp.ndarray[double, ndim=1] q_arr = np.array(q0, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] energies_arr = np.empty(steps + 1, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] h_arr = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] mags_arr = np.abs(q_arr)
    cdef double[::1] q = q_arr
    cdef double[::1] h = h_arr
    cdef double[::1] mags = mags_arr
    cdef double[::1] energies = energies_arr
    cdef Py_ssize_t t, i, j
    cdef double acc, energy, hi, target, delta

    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += weights[i, j] * q[j]
        h[i] = acc
    energy = 0.0
    for i in range(n):
        energy += q[i] * h[i]
    energy *= -0.5
    energies[0] = energy

    for t in range(steps):
        i = <Py_ssize_t> site_order[t]
        hi = h[i]
        if hi > tie_eps:
            target = mags[i]
        elif hi < -tie_eps:
            target = -mags[i]
        else:
            target = q[i]
        delta = target - q[i]
        if delta != 0.0:
            energy += -delta * hi - 0.5 * delta * delta * weights[i, i]
            q[i] = target
            for j in range(n):
                h[j] += delta * weights[i, j]
        energies[t + 1] = energy
    return q_arr, energies_arr
